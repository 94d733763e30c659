//! Random instances: dense graded ideals, monomial ideals and stable
//! monomial ideals.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::field::Rng;
use crate::ideal::Ideal;
use crate::monomial_ideal::{m_index, MonomialIdeal};
use crate::poly::{monomials_of_degree, Monomial, PolyRing, Polynomial};

fn random_degree(rng: &mut Rng, lo: u32, hi: u32) -> u32 {
    rng.range_inclusive(lo as u64, hi as u64) as u32
}

/// Homogeneous form of degree `d` with every coefficient drawn uniformly.
pub fn random_form(ring: &PolyRing, rng: &mut Rng, d: u32) -> Polynomial {
    let mut terms = Vec::new();
    for m in monomials_of_degree(ring.nvars(), d) {
        terms.push((m, ring.field().random_element(rng, false)));
    }
    ring.from_terms(terms)
}

/// Ideal generated by `num_gens` dense random forms with degrees in
/// `[deg_lo, deg_hi]`.
pub fn random_graded_ideal(
    ring: &Arc<PolyRing>,
    rng: &mut Rng,
    num_gens: usize,
    deg_lo: u32,
    deg_hi: u32,
) -> Ideal {
    assert!(deg_lo >= 1 && deg_lo <= deg_hi && num_gens >= 1);
    let mut gens = Vec::with_capacity(num_gens);
    while gens.len() < num_gens {
        let d = random_degree(rng, deg_lo, deg_hi);
        let f = random_form(ring, rng, d);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    Ideal::new(ring, gens).expect("forms are homogeneous")
}

/// Uniform random monomial of degree `d`.
pub fn random_monomial(n: usize, rng: &mut Rng, d: u32) -> Monomial {
    let all = monomials_of_degree(n, d);
    all[rng.below(all.len() as u64) as usize]
}

pub fn random_monomial_ideal(
    n: usize,
    rng: &mut Rng,
    num_gens: usize,
    deg_lo: u32,
    deg_hi: u32,
) -> MonomialIdeal {
    assert!(n >= 1 && deg_lo >= 1 && deg_lo <= deg_hi);
    let gens: Vec<Monomial> = (0..num_gens)
        .map(|_| {
            let d = random_degree(rng, deg_lo, deg_hi);
            random_monomial(n, rng, d)
        })
        .collect();
    MonomialIdeal::new(n, gens)
}

/// Smallest stable ideal containing `gens`: adjoin `x_i u / x_m(u)` for
/// `i < m(u)` until nothing new appears.
pub fn stable_closure(n: usize, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let mut ideal = MonomialIdeal::new(n, gens);
    loop {
        let mut added: BTreeSet<Vec<u32>> = BTreeSet::new();
        for u in ideal.generators() {
            let Ok(m) = m_index(u) else { continue };
            let last = Monomial::var(m - 1);
            let base = u.checked_div(&last).unwrap();
            for i in 0..m - 1 {
                let v = base.mul(&Monomial::var(i));
                if !ideal.contains(&v) {
                    added.insert(v.exponents(n));
                }
            }
        }
        if added.is_empty() {
            return ideal;
        }
        let mut all = ideal.generators().to_vec();
        all.extend(added.iter().map(|e| Monomial::from_exponents(e)));
        ideal = MonomialIdeal::new(n, all);
    }
}

pub fn random_stable_ideal(n: usize, rng: &mut Rng, num_gens: usize, max_deg: u32) -> MonomialIdeal {
    let seed = random_monomial_ideal(n, rng, num_gens, 1, max_deg);
    stable_closure(n, seed.generators().iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn closure_of_a_pure_power() {
        let c = stable_closure(2, [Monomial::from_exponents(&[0, 3])]);
        assert_eq!(c, MonomialIdeal::max_ideal_power(2, 3));
    }

    #[test]
    fn stable_ideals_are_stable() {
        let mut rng = Rng::new(1);
        for _ in 0..200 {
            let n = rng.range_inclusive(1, 4) as usize;
            let k = rng.range_inclusive(1, 4) as usize;
            let s = random_stable_ideal(n, &mut rng, k, 5);
            assert!(s.is_stable(), "{s:?}");
        }
    }

    #[test]
    fn closure_is_idempotent_on_stable_input() {
        let mut rng = Rng::new(2);
        for _ in 0..50 {
            let s = random_stable_ideal(3, &mut rng, 3, 4);
            assert_eq!(stable_closure(3, s.generators().iter().copied()), s);
        }
    }

    #[test]
    fn graded_generators_respect_degree_bounds() {
        let r = PolyRing::with_vars(PrimeField::default(), 3).unwrap();
        let mut rng = Rng::new(3);
        for _ in 0..50 {
            let i = random_graded_ideal(&r, &mut rng, 4, 2, 4);
            assert_eq!(i.generators().len(), 4);
            for g in i.generators() {
                assert!(g.is_homogeneous());
                assert!((2..=4).contains(&g.degree().unwrap()));
            }
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_stable_ideal(3, &mut Rng::new(4), 3, 4);
        let b = random_stable_ideal(3, &mut Rng::new(4), 3, 4);
        assert_eq!(a, b);
    }
}
