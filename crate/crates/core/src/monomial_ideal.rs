//! Monomial ideals: minimal generators, standard monomials, Hilbert series
//! numerators and the stability predicate.

use crate::error::{Error, Result};
use crate::poly::{grevlex_cmp, monomials_of_degree, Monomial};

/// A monomial ideal given by its minimal generators, stored in descending
/// grevlex order so equal ideals compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| grevlex_cmp(b, a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| grevlex_cmp(b, a));
    kept
}

/// One-based index of the last variable dividing `u`.
pub fn m_index(u: &Monomial) -> Result<usize> {
    u.last_var().map(|i| i + 1).ok_or(Error::UnitMonomial)
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal {
            n,
            gens: minimalize(gens.into_iter().collect()),
        }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![] }
    }

    /// The `d`-th power of the maximal ideal.
    pub fn max_ideal_power(n: usize, d: u32) -> Self {
        MonomialIdeal::new(n, monomials_of_degree(n, d))
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    /// Number of minimal generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).min()
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.n, self.gens.iter().chain(&other.gens).copied())
    }

    /// `M : x_i` (zero-based `i`).
    pub fn colon_var(&self, i: usize) -> MonomialIdeal {
        let v = Monomial::var(i);
        MonomialIdeal::new(
            self.n,
            self.gens.iter().map(|g| g.checked_div(&v).unwrap_or(*g)),
        )
    }

    /// Image in `K[x_1..x_{n-1}]` under `x_n -> 0`.
    pub fn drop_last(&self) -> MonomialIdeal {
        let last = self.n - 1;
        MonomialIdeal::new(
            last,
            self.gens.iter().filter(|g| g.exponent(last) == 0).copied(),
        )
    }

    /// Degree-`d` monomials not in the ideal, descending grevlex.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.n, d)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// Number of degree-`d` monomials outside the ideal, i.e. `Hilb(R/M, d)`.
    pub fn std_monomial_count(&self, d: u32) -> u64 {
        monomials_of_degree(self.n, d)
            .iter()
            .filter(|m| !self.contains(m))
            .count() as u64
    }

    /// Numerator `h(t)` of the Hilbert series `h(t) / (1 - t)^n` of `R/M`,
    /// by splitting on a pivot variable:
    /// `h(M) = h(M + x_i) + t * h(M : x_i)`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        numerator(self.gens.clone())
    }

    /// Stability checked on minimal generators: for every generator `u` and
    /// every `i < m(u)`, `x_i u / x_{m(u)}` lies in the ideal.
    pub fn is_stable(&self) -> bool {
        self.gens.iter().all(|u| {
            let Some(m) = u.last_var() else {
                return true;
            };
            let base = u.checked_div(&Monomial::var(m)).unwrap();
            (0..m).all(|i| self.contains(&base.mul(&Monomial::var(i))))
        })
    }
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // variable occurrence counts
    let mut counts = [0usize; crate::poly::MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let (pivot, &most) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .unwrap();
    if most <= 1 {
        // pairwise coprime generators: a regular sequence
        return gens.iter().fold(vec![1], |acc, g| {
            let mut factor = vec![0i64; g.degree() as usize + 1];
            factor[0] = 1;
            factor[g.degree() as usize] -= 1;
            series::mul(&acc, &factor)
        });
    }
    let v = Monomial::var(pivot);
    let with_var: Vec<Monomial> = std::iter::once(v)
        .chain(gens.iter().filter(|g| g.exponent(pivot) == 0).copied())
        .collect();
    let colon = minimalize(gens.iter().map(|g| g.checked_div(&v).unwrap_or(*g)).collect());
    let a = numerator(with_var);
    let b = numerator(colon);
    series::add(&a, &series::shift(&b, 1))
}

/// Integer polynomial helpers for Hilbert series numerators. Coefficient `k`
/// is the coefficient of `t^k`.
pub mod series {
    pub fn trim(mut a: Vec<i64>) -> Vec<i64> {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
        a
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, &x) in b.iter().enumerate() {
            out[i] += x;
        }
        trim(out)
    }

    pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        add(a, &neg)
    }

    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn shift(a: &[i64], k: usize) -> Vec<i64> {
        let mut out = vec![0; k];
        out.extend_from_slice(a);
        trim(out)
    }

    pub fn is_zero(a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// `a / (1 - t)` when exact.
    pub fn div_one_minus_t(a: &[i64]) -> Option<Vec<i64>> {
        if a.iter().sum::<i64>() != 0 {
            return None;
        }
        // a = (1 - t) q  =>  q_k = sum_{i<=k} a_i
        let mut q = Vec::with_capacity(a.len());
        let mut acc = 0;
        for &x in &a[..a.len().saturating_sub(1)] {
            acc += x;
            q.push(acc);
        }
        Some(trim(q))
    }

    /// Largest `k` with `(1 - t)^k | a`, capped at `cap`. Zero polynomial
    /// returns `cap`.
    pub fn order_at_one(a: &[i64], cap: usize) -> usize {
        let mut cur = a.to_vec();
        for k in 0..cap {
            if is_zero(&cur) {
                return cap;
            }
            match div_one_minus_t(&cur) {
                Some(q) => cur = q,
                None => return k,
            }
        }
        cap
    }

    pub fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || n < k {
            return 0;
        }
        let mut r: i128 = 1;
        for i in 0..k {
            r = r * (n - i) as i128 / (i + 1) as i128;
        }
        r as i64
    }

    /// Coefficient of `t^d` in `a(t) / (1 - t)^n`.
    pub fn coefficient(a: &[i64], n: usize, d: u32) -> i64 {
        let n = n as i64;
        a.iter()
            .enumerate()
            .take(d as usize + 1)
            .map(|(k, &c)| {
                let m = d as i64 - k as i64;
                if n == 0 {
                    if m == 0 {
                        c
                    } else {
                        0
                    }
                } else {
                    c * binom(m + n - 1, n - 1)
                }
            })
            .sum()
    }

    /// Evaluation at `t = 1`.
    pub fn value_at_one(a: &[i64]) -> i64 {
        a.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rng;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn ex() -> MonomialIdeal {
        MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 3])])
    }

    #[test]
    fn std_counts() {
        assert_eq!(MonomialIdeal::zero(2).std_monomial_count(3), 4);
        assert_eq!(ex().std_monomial_count(2), 1);
        assert_eq!(ex().std_monomial_count(3), 0);
    }

    #[test]
    fn numerators() {
        assert_eq!(MonomialIdeal::zero(2).hilbert_numerator(), vec![1]);
        let x = MonomialIdeal::new(2, [mono(&[1, 0])]);
        assert_eq!(x.hilbert_numerator(), vec![1, -1]);
        let h = ex().hilbert_numerator();
        let coeffs: Vec<i64> = (0..=6).map(|d| series::coefficient(&h, 2, d)).collect();
        assert_eq!(coeffs, vec![1, 2, 1, 0, 0, 0, 0]);
        assert_eq!(h, vec![1, 0, -2, 0, 1]);
    }

    #[test]
    fn m_index_examples() {
        assert_eq!(m_index(&mono(&[3, 0, 0])), Ok(1));
        assert_eq!(m_index(&mono(&[1, 0, 1])), Ok(3));
        assert_eq!(m_index(&mono(&[0, 3])), Ok(2));
        assert_eq!(m_index(&Monomial::one()), Err(Error::UnitMonomial));
    }

    #[test]
    fn stability_examples() {
        assert!(ex().is_stable());
        let ci = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[0, 2])]);
        assert!(!ci.is_stable());
        for n in 1..=4 {
            for d in 1..=4 {
                assert!(MonomialIdeal::max_ideal_power(n, d).is_stable());
            }
        }
    }

    #[test]
    fn minimal_generators() {
        let m = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[3, 0]), mono(&[2, 1]), mono(&[2, 0])]);
        assert_eq!(m.generators(), &[mono(&[2, 0])]);
    }

    fn random_monomial_ideal(rng: &mut Rng, n: usize, gens: usize, max_deg: u32) -> MonomialIdeal {
        MonomialIdeal::new(
            n,
            (0..gens).map(|_| {
                let d = rng.range_inclusive(1, max_deg as u64) as u32;
                let all = monomials_of_degree(n, d);
                all[rng.below(all.len() as u64) as usize]
            }),
        )
    }

    /// Stability over every monomial of the ideal up to degree `bound`.
    fn stable_exhaustive(m: &MonomialIdeal, bound: u32) -> bool {
        (0..=bound).all(|d| {
            monomials_of_degree(m.nvars(), d)
                .into_iter()
                .filter(|u| m.contains(u))
                .all(|u| match u.last_var() {
                    None => true,
                    Some(j) => {
                        let base = u.checked_div(&Monomial::var(j)).unwrap();
                        (0..j).all(|i| m.contains(&base.mul(&Monomial::var(i))))
                    }
                })
        })
    }

    #[test]
    fn numerator_matches_counts_on_random_ideals() {
        let mut rng = Rng::new(31);
        for _ in 0..200 {
            let n = rng.range_inclusive(1, 4) as usize;
            let m = { let k = rng.range_inclusive(1, 5) as usize; random_monomial_ideal(&mut rng, n, k, 4) };
            let h = m.hilbert_numerator();
            for d in 0..=10 {
                assert_eq!(
                    series::coefficient(&h, n, d),
                    m.std_monomial_count(d) as i64,
                    "{m:?} degree {d}"
                );
            }
        }
    }

    #[test]
    fn generator_stability_matches_exhaustive_check() {
        let mut rng = Rng::new(32);
        let mut seen_stable = 0;
        for _ in 0..300 {
            let n = rng.range_inclusive(1, 3) as usize;
            let m = { let k = rng.range_inclusive(1, 4) as usize; random_monomial_ideal(&mut rng, n, k, 3) };
            let s = m.is_stable();
            seen_stable += s as usize;
            assert_eq!(s, stable_exhaustive(&m, 8), "{m:?}");
        }
        assert!(seen_stable > 10);
    }

    #[test]
    fn series_helpers() {
        assert_eq!(series::div_one_minus_t(&[1, -1]), Some(vec![1]));
        assert_eq!(series::div_one_minus_t(&[1, 0, -2, 0, 1]), Some(vec![1, 1, -1, -1]));
        assert_eq!(series::order_at_one(&[1, -2, 1], 5), 2);
        assert_eq!(series::order_at_one(&[1], 5), 0);
    }
}
