//! Graded Betti numbers of `R/I` from Koszul homology, the Eliahou–Kervaire
//! formula for stable ideals, regularity and the invariants read off a
//! complete Betti table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fp, Rng};
use crate::gin::gin;
use crate::ideal::Ideal;
use crate::linalg::rank;
use crate::monomial_ideal::{m_index, series, MonomialIdeal};
use crate::poly::Monomial;

/// Graded Betti numbers `β_{i,j}(R/I)`; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u32), u64>,
    pub max_i: usize,
    pub max_j: u32,
    /// Every nonzero entry lies inside the computed bounds.
    pub complete: bool,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `β_{i,j}(I) = β_{i+1,j}(R/I)`.
    pub fn ideal_betti(&self, i: usize, j: u32) -> u64 {
        self.get(i + 1, j)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Sum of the ranks in the last nonzero homological position.
    pub fn last_rank(&self) -> u64 {
        self.total(self.projective_dimension())
    }

    /// Regularity of the ideal, `max {j - i : β_{i,j}(I) ≠ 0}`.
    pub fn ideal_regularity(&self) -> Option<u32> {
        self.entries
            .keys()
            .filter(|(i, _)| *i >= 1)
            .map(|&(i, j)| j + 1 - i as u32)
            .max()
    }

    /// `Σ (-1)^i β_{i,j} t^j`, the numerator of the Hilbert series of `R/I`.
    pub fn alternating_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|(_, j)| *j).max().unwrap_or(0);
        let mut out = vec![0i64; top as usize + 1];
        for (&(i, j), &v) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out[j as usize] += sign * v as i64;
        }
        series::trim(out)
    }

    /// `(i, j, β_{i,j})` in increasing order.
    pub fn triples(&self) -> Vec<(usize, u32, u64)> {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect()
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `j - i`, columns by `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pd = self.projective_dimension();
        let top_row = self
            .entries
            .keys()
            .map(|&(i, j)| j - i as u32)
            .max()
            .unwrap_or(0);
        let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .chain(self.entries.keys().map(|(i, _)| i.to_string().len()))
            .max()
            .unwrap_or(1)
            .max((0..=pd).map(|i| self.total(i).to_string().len()).max().unwrap_or(1));
        write!(f, "{:>7}", "")?;
        for i in 0..=pd {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for i in 0..=pd {
            write!(f, " {:>width$}", self.total(i))?;
        }
        writeln!(f)?;
        for row in 0..=top_row {
            write!(f, "{:>6}:", row)?;
            for i in 0..=pd {
                write!(f, " {:>width$}", cell(self.get(i, row + i as u32)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Graded pieces of `R/I` with multiplication by the variables.
struct Quotient<'a> {
    ideal: &'a Ideal,
    basis: HashMap<u32, Vec<Monomial>>,
    index: HashMap<u32, HashMap<Monomial, usize>>,
    /// `(d, s, u)` -> coordinates of `x_s * u` in the degree `d + 1` basis.
    products: HashMap<(u32, usize, usize), Vec<(usize, Fp)>>,
}

impl<'a> Quotient<'a> {
    fn new(ideal: &'a Ideal) -> Self {
        Quotient {
            ideal,
            basis: HashMap::new(),
            index: HashMap::new(),
            products: HashMap::new(),
        }
    }

    fn dim(&mut self, d: u32) -> usize {
        self.basis(d).len()
    }

    fn basis(&mut self, d: u32) -> &Vec<Monomial> {
        if !self.basis.contains_key(&d) {
            let b = self.ideal.lead_ideal().standard_monomials(d);
            self.index
                .insert(d, b.iter().enumerate().map(|(k, m)| (*m, k)).collect());
            self.basis.insert(d, b);
        }
        &self.basis[&d]
    }

    fn times_var(&mut self, d: u32, s: usize, u: usize) -> Vec<(usize, Fp)> {
        if let Some(v) = self.products.get(&(d, s, u)) {
            return v.clone();
        }
        let ring = self.ideal.ring().clone();
        let m = self.basis(d)[u].mul(&Monomial::var(s));
        self.basis(d + 1);
        let nf = self.ideal.groebner().normal_form(&ring.monomial(m, Fp::ONE));
        let idx = &self.index[&(d + 1)];
        let v: Vec<(usize, Fp)> = nf.terms().iter().map(|(t, c)| (idx[t], *c)).collect();
        self.products.insert((d, s, u), v.clone());
        v
    }
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Rank of `∂_i : Λ^i ⊗ (R/I)_{j-i} → Λ^{i-1} ⊗ (R/I)_{j-i+1}`.
fn differential_rank(q: &mut Quotient, n: usize, i: usize, j: u32) -> usize {
    if i == 0 || i > n || (j as usize) < i {
        return 0;
    }
    let d = j - i as u32;
    let (src, dst) = (q.dim(d), q.dim(d + 1));
    if src == 0 || dst == 0 {
        return 0;
    }
    let from = subsets(n, i);
    let to = subsets(n, i - 1);
    let to_index: HashMap<u32, usize> = to.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let field = *q.ideal.ring().field();
    let mut rows = Vec::with_capacity(from.len() * src);
    for &s in &from {
        for u in 0..src {
            let mut row = vec![Fp::ZERO; to.len() * dst];
            let mut sign_neg = false;
            for v in 0..n {
                if s & (1 << v) == 0 {
                    continue;
                }
                let base = to_index[&(s & !(1 << v))] * dst;
                for (col, c) in q.times_var(d, v, u) {
                    let c = if sign_neg { field.neg(c) } else { c };
                    row[base + col] = field.add(row[base + col], c);
                }
                sign_neg = !sign_neg;
            }
            rows.push(row);
        }
    }
    rank(&field, rows)
}

/// `β_{i,j}(R/I)` for `i <= max_i`, `j <= max_j` as Koszul homology
/// dimensions. The table is marked complete when `max_i = n` and the degree
/// bound reaches `n + reg(R/I)`; that check is left to callers that know
/// the regularity.
pub fn koszul_betti(ideal: &Ideal, max_i: usize, max_j: u32) -> BettiTable {
    let n = ideal.nvars();
    let max_i = max_i.min(n);
    let mut q = Quotient::new(ideal);
    let mut ranks: HashMap<(usize, u32), usize> = HashMap::new();
    let mut entries = BTreeMap::new();
    for i in 0..=max_i {
        for j in i as u32..=max_j {
            let d = j - i as u32;
            let dim = series::binom(n as i64, i as i64) as usize * q.dim(d);
            if dim == 0 {
                continue;
            }
            let mut r = |k: usize| {
                *ranks
                    .entry((k, j))
                    .or_insert_with(|| differential_rank(&mut q, n, k, j))
            };
            let b = dim - r(i) - r(i + 1);
            if b > 0 {
                entries.insert((i, j), b as u64);
            }
        }
    }
    BettiTable {
        entries,
        max_i,
        max_j,
        complete: false,
    }
}

/// Eliahou–Kervaire: a minimal generator `u` contributes
/// `C(m(u) - 1, i)` to `β_{i, deg u + i}(I)`.
pub fn ek_betti(m: &MonomialIdeal) -> Result<BettiTable> {
    if !m.is_stable() {
        return Err(Error::NotStable);
    }
    let mut entries = BTreeMap::new();
    if m.is_unit() {
        return Ok(BettiTable {
            entries,
            max_i: 0,
            max_j: 0,
            complete: true,
        });
    }
    entries.insert((0, 0), 1);
    for u in m.generators() {
        let mu = m_index(u)? as i64;
        for i in 0..mu {
            let c = series::binom(mu - 1, i) as u64;
            *entries.entry((i as usize + 1, u.degree() + i as u32)).or_insert(0) += c;
        }
    }
    let max_i = entries.keys().map(|(i, _)| *i).max().unwrap_or(0);
    let max_j = entries.keys().map(|(_, j)| *j).max().unwrap_or(0);
    Ok(BettiTable {
        entries,
        max_i,
        max_j,
        complete: true,
    })
}

/// Upper bound for the regularity of `I`: the degree of the lcm of the
/// lead ideal's generators.
fn lcm_bound(ideal: &Ideal) -> u32 {
    let lead = ideal.lead_ideal();
    let lcm = lead
        .generators()
        .iter()
        .fold(Monomial::one(), |acc, u| acc.lcm(u));
    lcm.degree().max(1)
}

/// Regularity from a generic initial ideal when it is stable, otherwise
/// from a Koszul sweep up to the lcm bound.
pub fn regularity_with_gin(ideal: &Ideal, gin: &MonomialIdeal) -> Result<u32> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::DegenerateIdeal);
    }
    if gin.is_stable() {
        return Ok(gin.max_degree().unwrap());
    }
    Ok(koszul_regularity(ideal))
}

/// Regularity from Koszul homology alone.
pub fn koszul_regularity(ideal: &Ideal) -> u32 {
    let n = ideal.nvars();
    let bound = lcm_bound(ideal);
    let table = koszul_betti(ideal, n, n as u32 + bound);
    table.ideal_regularity().unwrap_or(0)
}

pub fn regularity(ideal: &Ideal, rng: &mut Rng, trials: usize) -> Result<u32> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::DegenerateIdeal);
    }
    let g = gin(ideal, rng, trials)?;
    regularity_with_gin(ideal, &g.gin)
}

/// The complete table, bounded by the regularity.
pub fn betti_table_with_regularity(ideal: &Ideal, reg: u32) -> BettiTable {
    let n = ideal.nvars();
    // β_{i,j}(R/I) = 0 once j - i > reg(I) - 1
    let max_j = n as u32 + reg.saturating_sub(1);
    let mut t = koszul_betti(ideal, n, max_j);
    t.complete = true;
    t
}

pub fn betti_table(ideal: &Ideal, rng: &mut Rng, trials: usize) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_zero() {
        return Ok(BettiTable {
            entries: BTreeMap::from([((0, 0), 1)]),
            max_i: 0,
            max_j: 0,
            complete: true,
        });
    }
    let reg = regularity(ideal, rng, trials)?;
    Ok(betti_table_with_regularity(ideal, reg))
}

/// Whether an ideal generated in one degree `d` has regularity `d`.
pub fn has_linear_resolution_with_gin(ideal: &Ideal, gin: &MonomialIdeal) -> Result<bool> {
    let profile = ideal.mu_profile();
    if profile.is_empty() {
        return Err(Error::DegenerateIdeal);
    }
    if profile.len() > 1 {
        return Err(Error::NotEquigenerated);
    }
    let d = *profile.keys().next().unwrap();
    Ok(regularity_with_gin(ideal, gin)? == d)
}

pub fn has_linear_resolution(ideal: &Ideal, rng: &mut Rng, trials: usize) -> Result<bool> {
    let profile = ideal.mu_profile();
    if profile.is_empty() {
        return Err(Error::DegenerateIdeal);
    }
    if profile.len() > 1 {
        return Err(Error::NotEquigenerated);
    }
    let g = gin(ideal, rng, trials)?;
    has_linear_resolution_with_gin(ideal, &g.gin)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologicalProfile {
    pub projective_dimension: usize,
    pub depth: usize,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
}

pub fn homological_profile_from_table(ideal: &Ideal, table: &BettiTable) -> Result<HomologicalProfile> {
    let (dim, _) = ideal.dim_and_height()?;
    let pd = table.projective_dimension();
    let depth = ideal.nvars() - pd;
    let cm = depth == dim;
    Ok(HomologicalProfile {
        projective_dimension: pd,
        depth,
        cohen_macaulay: cm,
        gorenstein: cm && table.last_rank() == 1,
    })
}

pub fn homological_profile(ideal: &Ideal, rng: &mut Rng, trials: usize) -> Result<HomologicalProfile> {
    let table = betti_table(ideal, rng, trials)?;
    homological_profile_from_table(ideal, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::generate::{random_graded_ideal, random_stable_ideal};
    use crate::ideal::Length;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn ring(n: usize) -> Arc<PolyRing> {
        PolyRing::with_vars(PrimeField::default(), n).unwrap()
    }

    fn mono(n: usize, exps: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, exps.iter().map(|e| Monomial::from_exponents(e)))
    }

    fn ideal(n: usize, exps: &[&[u32]]) -> Ideal {
        Ideal::from_monomials(&ring(n), &mono(n, exps))
    }

    fn nonzero(t: &BettiTable) -> Vec<(usize, u32, u64)> {
        t.triples()
    }

    #[test]
    fn linear_form() {
        let t = koszul_betti(&ideal(2, &[&[1, 0]]), 2, 6);
        assert_eq!(nonzero(&t), vec![(0, 0, 1), (1, 1, 1)]);
    }

    #[test]
    fn complete_intersection_of_squares() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let t = koszul_betti(&i, 2, 8);
        assert_eq!(nonzero(&t), vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        assert_eq!(t.alternating_numerator(), i.hilbert_numerator());
        assert_eq!(t.alternating_numerator(), vec![1, 0, -2, 0, 1]);
    }

    #[test]
    fn square_of_the_maximal_ideal() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let t = koszul_betti(&i, 2, 8);
        assert_eq!(nonzero(&t), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        assert_eq!(t.alternating_numerator(), vec![1, 0, -3, 2]);
    }

    #[test]
    fn eliahou_kervaire_examples() {
        let t = ek_betti(&mono(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(t.ideal_betti(0, 2), 2);
        assert_eq!(t.ideal_betti(0, 3), 1);
        assert_eq!(t.ideal_betti(1, 3), 1);
        assert_eq!(t.ideal_betti(1, 4), 1);
        assert_eq!(t.total(1), 3);
        assert_eq!(t.total(2), 2);
        for n in 1..=4 {
            let mut e = vec![0; n];
            e[0] = 1;
            let t = ek_betti(&mono(n, &[&e])).unwrap();
            assert_eq!(nonzero(&t), vec![(0, 0, 1), (1, 1, 1)]);
        }
        let t = ek_betti(&MonomialIdeal::max_ideal_power(2, 2)).unwrap();
        assert_eq!(t.total(1), 3);
        assert_eq!(t.total(2), 2);
        assert_eq!(ek_betti(&mono(2, &[&[2, 0], &[0, 2]])), Err(Error::NotStable));
    }

    #[test]
    fn eliahou_kervaire_matches_koszul() {
        let mut rng = Rng::new(21);
        for _ in 0..25 {
            let n = rng.range_inclusive(2, 4) as usize;
            let k = rng.range_inclusive(1, 3) as usize;
            let s = random_stable_ideal(n, &mut rng, k, 4);
            let ek = ek_betti(&s).unwrap();
            let kz = koszul_betti(&Ideal::from_monomials(&ring(n), &s), n, ek.max_j + 1);
            assert_eq!(ek.entries, kz.entries, "{s:?}");
        }
    }

    #[test]
    fn regularity_examples() {
        for d in 1..=3 {
            let i = Ideal::from_monomials(&ring(2), &MonomialIdeal::max_ideal_power(2, d));
            assert_eq!(regularity(&i, &mut Rng::new(1), 3).unwrap(), d);
        }
        let ci = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(regularity(&ci, &mut Rng::new(1), 3).unwrap(), 3);
        assert_eq!(koszul_regularity(&ci), 3);
        assert_eq!(regularity(&ideal(2, &[&[1, 0]]), &mut Rng::new(1), 3).unwrap(), 1);
        let r = ring(2);
        assert_eq!(
            regularity(&Ideal::zero(&r), &mut Rng::new(1), 3),
            Err(Error::DegenerateIdeal)
        );
    }

    #[test]
    fn regularity_paths_agree() {
        let mut rng = Rng::new(22);
        for _ in 0..10 {
            let n = rng.range_inclusive(2, 3) as usize;
            let i = random_graded_ideal(&ring(n), &mut rng, 3, 1, 3);
            let g = gin(&i, &mut rng, 3).unwrap().gin;
            assert!(g.is_stable());
            assert_eq!(regularity_with_gin(&i, &g).unwrap(), koszul_regularity(&i), "{i:?}");
        }
    }

    #[test]
    fn linear_resolution_examples() {
        let mut rng = Rng::new(3);
        let m3 = Ideal::from_monomials(&ring(3), &MonomialIdeal::max_ideal_power(3, 3));
        assert!(has_linear_resolution(&m3, &mut rng, 3).unwrap());
        let ci = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(!has_linear_resolution(&ci, &mut rng, 3).unwrap());
        let st = ideal(2, &[&[2, 0], &[1, 1]]);
        assert!(has_linear_resolution(&st, &mut rng, 3).unwrap());
        let t = koszul_betti(&st, 2, 8);
        assert!(t.entries.keys().all(|&(i, j)| i == 0 || j == i as u32 + 1));
        let mixed = ideal(2, &[&[1, 0], &[0, 2]]);
        assert_eq!(has_linear_resolution(&mixed, &mut rng, 3), Err(Error::NotEquigenerated));
    }

    #[test]
    fn profile_examples() {
        let mut rng = Rng::new(4);
        let p = homological_profile(&ideal(2, &[&[2, 0], &[0, 2]]), &mut rng, 3).unwrap();
        assert_eq!((p.projective_dimension, p.depth, p.cohen_macaulay, p.gorenstein), (2, 0, true, true));
        let p = homological_profile(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]), &mut rng, 3).unwrap();
        assert_eq!((p.projective_dimension, p.depth, p.cohen_macaulay, p.gorenstein), (2, 0, true, false));
        let p = homological_profile(&ideal(2, &[&[1, 0]]), &mut rng, 3).unwrap();
        assert_eq!((p.projective_dimension, p.depth, p.cohen_macaulay, p.gorenstein), (1, 1, true, true));
        // (x^2, xy) has an embedded component: not Cohen-Macaulay
        let p = homological_profile(&ideal(2, &[&[2, 0], &[1, 1]]), &mut rng, 3).unwrap();
        assert!(!p.cohen_macaulay);
    }

    #[test]
    fn table_identities_on_random_ideals() {
        let mut rng = Rng::new(23);
        for _ in 0..12 {
            let n = rng.range_inclusive(2, 3) as usize;
            let i = random_graded_ideal(&ring(n), &mut rng, 3, 1, 3);
            let t = betti_table(&i, &mut rng, 3).unwrap();
            assert_eq!(t.get(0, 0), 1);
            assert!(t.entries.keys().all(|&(k, j)| j >= k as u32));
            assert_eq!(t.alternating_numerator(), i.hilbert_numerator());
            let p = homological_profile_from_table(&i, &t).unwrap();
            let (_, height) = i.dim_and_height().unwrap();
            assert!(p.projective_dimension <= n);
            assert_eq!(p.cohen_macaulay, p.projective_dimension == height);
            if i.dim_and_height().unwrap().0 == 0 {
                assert_eq!(Length::Finite(t.last_rank()), i.type_of());
            }
        }
    }

    #[test]
    fn display_layout() {
        let t = koszul_betti(&ideal(2, &[&[2, 0], &[0, 2]]), 2, 8);
        let s = t.to_string();
        assert_eq!(
            s,
            "        0 1 2\n total: 1 2 1\n     0: 1 . .\n     1: . 2 .\n     2: . . 1\n"
        );
    }
}
