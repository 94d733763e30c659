//! Graded ideals and the operations built on Gröbner bases: products with the
//! maximal ideal, colon ideals, intersections, images modulo a linear form,
//! Hilbert functions and the lengths derived from them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::monomial_ideal::{series, MonomialIdeal};
use crate::poly::{
    monomials_of_degree, substitute_last_variable, LinearChange, LinearForm, Monomial,
    PolyRing, Polynomial,
};

/// Length of a module that may fail to be finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => f.write_str("infinite"),
        }
    }
}

/// Hilbert function of `R/I`, tabulated up to some degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub n: usize,
    pub values: Vec<u64>,
    /// Numerator of the Hilbert series over `(1 - t)^n`.
    pub numerator: Vec<i64>,
    /// From this degree on the function agrees with the Hilbert polynomial.
    pub stable_from: u32,
}

impl HilbertFunction {
    /// Value in any degree, read off the series.
    pub fn value(&self, d: u32) -> u64 {
        match self.values.get(d as usize) {
            Some(&v) => v,
            None => series::coefficient(&self.numerator, self.n, d) as u64,
        }
    }
}

/// A homogeneous ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
    lead: OnceLock<MonomialIdeal>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

fn total_monomials(n: usize, d: u32) -> u64 {
    series::binom(d as i64 + n as i64 - 1, n as i64 - 1) as u64
}

/// `(a - b) / (1 - t)^n` evaluated at one, when it is a polynomial.
fn length_of_difference(n: usize, a: &[i64], b: &[i64]) -> Length {
    let mut q = series::sub(a, b);
    for _ in 0..n {
        if series::is_zero(&q) {
            return Length::Finite(0);
        }
        match series::div_one_minus_t(&q) {
            Some(next) => q = next,
            None => return Length::Infinite,
        }
    }
    Length::Finite(series::value_at_one(&q) as u64)
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        if let Some(index) = gens.iter().position(|g| !g.is_homogeneous()) {
            return Err(Error::NonHomogeneousGenerator { index, line: 0 });
        }
        Ok(Ideal::unchecked(ring, gens))
    }

    fn unchecked(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
            lead: OnceLock::new(),
        }
    }

    fn from_basis(gb: GroebnerBasis) -> Self {
        let ideal = Ideal::unchecked(gb.ring(), gb.elements().to_vec());
        let _ = ideal.gb.set(gb);
        ideal
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::unchecked(ring, vec![])
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::unchecked(ring, vec![ring.one()])
    }

    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        Ideal::unchecked(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    pub fn from_monomials(ring: &Arc<PolyRing>, m: &MonomialIdeal) -> Self {
        let gens = m
            .generators()
            .iter()
            .map(|u| ring.monomial(*u, crate::field::Fp::ONE))
            .collect();
        Ideal::unchecked(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| buchberger(&self.ring, &self.gens))
    }

    pub fn lead_ideal(&self) -> &MonomialIdeal {
        self.lead.get_or_init(|| self.groebner().lead_ideal())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.lead_ideal().is_unit()
    }

    /// True for nonzero proper ideals, the ones the deciders accept.
    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by mutual membership of generators.
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn initial_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(Polynomial::degree).min()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(Polynomial::degree).max()
    }

    pub fn apply_change(&self, change: &LinearChange) -> Ideal {
        let gens = self.gens.iter().map(|g| change.apply(&self.ring, g)).collect();
        Ideal::unchecked(&self.ring, gens)
    }

    /// The extension of this ideal to a ring with `k` more variables.
    pub fn extend(&self, k: usize) -> Result<Ideal> {
        let big = self.ring.adjoin(k)?;
        let gens = self.gens.iter().map(|g| big.embed(g)).collect();
        Ok(Ideal::unchecked(&big, gens))
    }

    /// `m I`, generated by all `x_i g`.
    pub fn m_times(&self) -> Ideal {
        let mut gens = Vec::with_capacity(self.gens.len() * self.nvars());
        for g in self.basis_for_products() {
            for i in 0..self.nvars() {
                gens.push(self.ring.mul_term(g, crate::field::Fp::ONE, &Monomial::var(i)));
            }
        }
        Ideal::unchecked(&self.ring, gens)
    }

    fn basis_for_products(&self) -> &[Polynomial] {
        match self.gb.get() {
            Some(gb) if gb.len() <= self.gens.len() => gb.elements(),
            _ => &self.gens,
        }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::unchecked(&self.ring, gens)
    }

    /// `I : f`. Linear `f` takes the coordinate-change route, anything else
    /// goes through an intersection.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroDivisorPolynomial);
        }
        if f.degree() == Some(1) && f.is_homogeneous() {
            let mut coeffs = vec![crate::field::Fp::ZERO; self.nvars()];
            for (m, c) in f.terms() {
                coeffs[m.last_var().unwrap()] = *c;
            }
            return Ok(self.colon_linear(&LinearForm::new(coeffs).unwrap()));
        }
        self.colon_by_elimination(f)
    }

    /// `I : f = (I ∩ (f)) / f`.
    pub fn colon_by_elimination(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroDivisorPolynomial);
        }
        let principal = Ideal::unchecked(&self.ring, vec![f.clone()]);
        let meet = self.intersect(&principal);
        let gens = meet
            .groebner()
            .elements()
            .iter()
            .map(|g| self.ring.div_exact(g, f).expect("element of (f) is divisible by f"))
            .collect();
        Ok(Ideal::unchecked(&self.ring, gens))
    }

    /// Reduced basis of `phi(I)` where `phi` moves `z` to the last variable.
    fn moved_basis(&self, z: &LinearForm) -> (LinearChange, GroebnerBasis) {
        let phi = LinearChange::moving_to_last(z, *self.ring.field());
        let moved: Vec<Polynomial> = self.gens.iter().map(|g| phi.apply(&self.ring, g)).collect();
        (phi, buchberger(&self.ring, &moved))
    }

    /// Lead ideals of `phi(I)` and of `phi(I) : x_n`.
    fn moved_leads(&self, z: &LinearForm) -> (MonomialIdeal, MonomialIdeal) {
        let (_, gb) = self.moved_basis(z);
        let lead = gb.lead_ideal();
        let colon = lead.colon_var(self.nvars() - 1);
        (lead, colon)
    }

    /// `I : z` for a linear form. After moving `z` to `x_n`, dividing each
    /// element of the grevlex basis by `x_n` where possible gives a basis of
    /// the colon.
    pub fn colon_linear(&self, z: &LinearForm) -> Ideal {
        let (phi, gb) = self.moved_basis(z);
        let last = self.nvars() - 1;
        let divided: Vec<Polynomial> = gb
            .elements()
            .iter()
            .map(|g| self.ring.divide_by_var_if_divisible(g, last))
            .collect();
        let back = phi.inverse();
        let gens = divided.iter().map(|g| back.apply(&self.ring, g)).collect();
        Ideal::unchecked(&self.ring, gens)
    }

    /// `I : m`, folded from the colons by the variables.
    pub fn colon_m(&self) -> Ideal {
        let n = self.nvars();
        if self.is_unit() {
            return Ideal::unit(&self.ring);
        }
        let mut acc = self.colon_linear(&LinearForm::coordinate(n, 0));
        for i in 1..n {
            let next = self.colon_linear(&LinearForm::coordinate(n, i));
            acc = acc.intersect(&next);
        }
        acc
    }

    /// `I ∩ J` as `(t I + (1 - t) J) ∩ R`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        let big = self
            .ring
            .with_elimination_vars(1)
            .expect("room for one elimination variable");
        let t = big.var(self.nvars());
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(big.mul(&t, &big.embed(g)));
        }
        for h in &other.gens {
            let h = big.embed(h);
            gens.push(big.sub(&h, &big.mul(&t, &h)));
        }
        let gb = buchberger(&big, &gens);
        Ideal::from_basis(gb.eliminate(&self.ring))
    }

    /// Image of `I` in `R / zR`, identified with a ring in one fewer
    /// variable by solving `z = 0` for the last variable.
    pub fn reduce_mod_linear(&self, z: &LinearForm) -> Result<Ideal> {
        if self.nvars() < 2 {
            return Err(Error::VariableCount {
                got: 0,
                max: crate::poly::MAX_VARS,
            });
        }
        let target = self.ring.drop_last()?;
        let gens = self
            .gens
            .iter()
            .map(|g| substitute_last_variable(&self.ring, &target, g, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::unchecked(&target, gens))
    }

    pub fn hilbert_numerator(&self) -> Vec<i64> {
        self.lead_ideal().hilbert_numerator()
    }

    /// `dim_K (R/I)_d`.
    pub fn hilbert_value(&self, d: u32) -> u64 {
        self.lead_ideal().std_monomial_count(d)
    }

    pub fn hilbert(&self, up_to: u32) -> HilbertFunction {
        let n = self.nvars();
        let numerator = self.hilbert_numerator();
        let values = (0..=up_to).map(|d| self.hilbert_value(d)).collect();
        // reduce to h'/(1-t)^dim; the polynomial takes over after deg h' - dim
        let order = series::order_at_one(&numerator, n);
        let mut reduced = numerator.clone();
        for _ in 0..order {
            reduced = series::div_one_minus_t(&reduced).unwrap_or(reduced);
        }
        let dim = (n - order) as i64;
        let deg = series::trim(reduced).len() as i64 - 1;
        HilbertFunction {
            n,
            values,
            numerator,
            stable_from: (deg - dim + 1).max(0) as u32,
        }
    }

    /// `dim_K I_d`.
    pub fn dim_in_degree(&self, d: u32) -> u64 {
        total_monomials(self.nvars(), d) - self.hilbert_value(d)
    }

    /// Number of minimal generators in each degree, `dim (I/mI)_j`.
    pub fn mu_profile(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        let (Some(lo), Some(hi)) = (self.initial_degree(), self.max_generator_degree()) else {
            return out;
        };
        let mi = self.m_times();
        for j in lo..=hi {
            let v = self.dim_in_degree(j) - mi.dim_in_degree(j);
            if v > 0 {
                out.insert(j, v);
            }
        }
        out
    }

    /// Minimal number of generators, `l(I/mI)`.
    pub fn mu(&self) -> u64 {
        self.mu_profile().values().sum()
    }

    /// A minimal homogeneous generating set extracted from the generators.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let mut sorted = self.gens.clone();
        sorted.sort_by_key(|g| g.degree());
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut gb = buchberger(&self.ring, &[]);
        for g in sorted {
            if !gb.contains(&g) {
                kept.push(g);
                gb = buchberger(&self.ring, &kept);
            }
        }
        kept
    }

    /// `l((I : z)/I)`, decided exactly from Hilbert series.
    pub fn colon_length(&self, z: &LinearForm) -> Length {
        let (lead, colon) = self.moved_leads(z);
        length_of_difference(self.nvars(), &lead.hilbert_numerator(), &colon.hilbert_numerator())
    }

    /// Whether `mI : z = I`. Since `I ⊆ mI : z` always holds, equal Hilbert
    /// series decide it.
    pub fn m_full_at(&self, z: &LinearForm) -> bool {
        let (_, colon) = self.m_times().moved_leads(z);
        colon.hilbert_numerator() == self.hilbert_numerator()
    }

    /// The ideal generated by the degree-`j` part of `I`.
    pub fn component_ideal(&self, j: u32) -> Ideal {
        let gb = self.groebner();
        let lead = self.lead_ideal();
        let one = crate::field::Fp::ONE;
        let gens = monomials_of_degree(self.nvars(), j)
            .into_iter()
            .filter(|u| lead.contains(u))
            .map(|u| {
                let m = self.ring.monomial(u, one);
                self.ring.sub(&m, &gb.normal_form(&m))
            })
            .collect();
        Ideal::unchecked(&self.ring, gens)
    }

    /// `l((I : m)/I)`.
    pub fn type_of(&self) -> Length {
        let socle = self.colon_m();
        length_of_difference(self.nvars(), &self.hilbert_numerator(), &socle.hilbert_numerator())
    }

    /// Krull dimension of `R/I` and height of `I`.
    pub fn dim_and_height(&self) -> Result<(usize, usize)> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.nvars();
        let order = series::order_at_one(&self.hilbert_numerator(), n);
        Ok((n - order, order))
    }

    /// Generators printed with the ring's variable names.
    pub fn format_generators(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField, Rng};
    use crate::generate::random_graded_ideal;
    use crate::linalg::rank;
    use crate::poly::random_linear_form;

    fn ring(n: usize) -> Arc<PolyRing> {
        PolyRing::with_vars(PrimeField::default(), n).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&[(i64, &[u32])]]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.poly(g)).collect()).unwrap()
    }

    fn mono_ideal(r: &Arc<PolyRing>, exps: &[&[u32]]) -> Ideal {
        let gens = exps
            .iter()
            .map(|e| r.monomial(Monomial::from_exponents(e), Fp::ONE))
            .collect();
        Ideal::new(r, gens).unwrap()
    }

    fn m_power(r: &Arc<PolyRing>, d: u32) -> Ideal {
        Ideal::from_monomials(r, &MonomialIdeal::max_ideal_power(r.nvars(), d))
    }

    fn generic(r: &PolyRing, seed: u64) -> LinearForm {
        random_linear_form(r, &mut Rng::new(seed))
    }

    /// `dim_K (R/(I:z))_d` by linear algebra: rank of `v -> z v` from `R_d`
    /// into `(R/I)_{d+1}`.
    fn colon_hilbert_oracle(i: &Ideal, z: &LinearForm, d: u32) -> u64 {
        let r = i.ring();
        let zp = z.to_polynomial(r);
        let gb = i.groebner();
        let target = monomials_of_degree(r.nvars(), d + 1);
        let rows: Vec<Vec<Fp>> = monomials_of_degree(r.nvars(), d)
            .into_iter()
            .map(|u| {
                let image = gb.normal_form(&r.mul(&zp, &r.monomial(u, Fp::ONE)));
                target
                    .iter()
                    .map(|t| {
                        image
                            .terms()
                            .iter()
                            .find(|(m, _)| m == t)
                            .map_or(Fp::ZERO, |(_, c)| *c)
                    })
                    .collect()
            })
            .collect();
        rank(r.field(), rows) as u64
    }

    #[test]
    fn non_homogeneous_rejected() {
        let r = ring(2);
        let err = Ideal::new(&r, vec![r.poly(&[(1, &[2, 0]), (1, &[1, 0])])]).unwrap_err();
        assert_eq!(err, Error::NonHomogeneousGenerator { index: 0, line: 0 });
    }

    #[test]
    fn m_times_examples() {
        let r = ring(2);
        let x = mono_ideal(&r, &[&[1, 0]]);
        assert!(x.m_times().same_as(&mono_ideal(&r, &[&[2, 0], &[1, 1]])));
        assert!(Ideal::unit(&r).m_times().same_as(&Ideal::maximal(&r)));
        let ci = mono_ideal(&r, &[&[2, 0], &[0, 2]]);
        let want = mono_ideal(&r, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]);
        assert!(ci.m_times().same_as(&want));
    }

    #[test]
    fn colon_examples() {
        let r = ring(2);
        let i = mono_ideal(&r, &[&[2, 0], &[1, 1]]);
        assert!(i.colon(&r.var(0)).unwrap().is_unit() == false);
        assert!(i.colon(&r.var(0)).unwrap().same_as(&Ideal::maximal(&r)));
        assert!(i.colon(&r.poly(&[(1, &[2, 0])])).unwrap().is_unit());
        assert_eq!(i.colon(&Polynomial::zero()).unwrap_err(), Error::ZeroDivisorPolynomial);

        let ci = mono_ideal(&r, &[&[2, 0], &[0, 2]]);
        let f = r.poly(&[(1, &[1, 0]), (1, &[0, 1])]);
        let c = ci.colon(&f).unwrap();
        for g in c.generators() {
            assert!(ci.contains(&r.mul(&f, g)));
        }
        assert!(c.contains_ideal(&ci));
        assert!(c.same_as(&ci.colon_by_elimination(&f).unwrap()));
        assert_eq!(c.hilbert(4).values, vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn colon_by_nonlinear_form() {
        let r = ring(2);
        let i = mono_ideal(&r, &[&[3, 0], &[0, 3]]);
        let f = r.poly(&[(1, &[2, 0])]);
        // (x^3, y^3) : x^2 = (x, y^3)
        assert!(i.colon(&f).unwrap().same_as(&mono_ideal(&r, &[&[1, 0], &[0, 3]])));
    }

    #[test]
    fn colon_routes_agree_on_random_ideals() {
        let mut rng = Rng::new(5);
        for _ in 0..12 {
            let n = rng.range_inclusive(2, 3) as usize;
            let r = ring(n);
            let i = random_graded_ideal(&r, &mut rng, 3, 1, 3);
            let z = random_linear_form(&r, &mut rng);
            let fast = i.colon_linear(&z);
            let slow = i.colon_by_elimination(&z.to_polynomial(&r)).unwrap();
            assert!(fast.same_as(&slow));
            assert!(fast.contains_ideal(&i));
            for d in 0..6 {
                assert_eq!(fast.hilbert_value(d), colon_hilbert_oracle(&i, &z, d));
            }
        }
    }

    #[test]
    fn colon_by_nonzerodivisor_is_trivial() {
        let r = ring(3);
        // prime monomial ideals: x_3 is a nonzerodivisor modulo (x_1, x_2)
        let p = mono_ideal(&r, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(p.colon(&r.var(2)).unwrap().same_as(&p));
        assert_eq!(p.colon_length(&LinearForm::coordinate(3, 2)), Length::Finite(0));
    }

    #[test]
    fn colon_m_examples() {
        let r = ring(2);
        assert!(m_power(&r, 2).colon_m().same_as(&Ideal::maximal(&r)));
        let x = mono_ideal(&r, &[&[1, 0]]);
        assert!(x.colon_m().same_as(&x));
        assert!(Ideal::unit(&r).colon_m().is_unit());
    }

    #[test]
    fn intersection_examples() {
        let r = ring(2);
        let a = mono_ideal(&r, &[&[1, 0]]);
        let b = mono_ideal(&r, &[&[0, 1]]);
        assert!(a.intersect(&b).same_as(&mono_ideal(&r, &[&[1, 1]])));
        let c = mono_ideal(&r, &[&[2, 0], &[0, 1]]);
        assert!(a.intersect(&c).same_as(&mono_ideal(&r, &[&[2, 0], &[1, 1]])));
    }

    #[test]
    fn reduce_mod_linear_examples() {
        let r = ring(2);
        let ci = mono_ideal(&r, &[&[2, 0], &[0, 2]]);
        let line = r.drop_last().unwrap();
        let x2 = Ideal::new(&line, vec![line.poly(&[(1, &[2])])]).unwrap();
        let img = ci.reduce_mod_linear(&LinearForm::coordinate(2, 1)).unwrap();
        assert!(img.same_as(&x2));
        let k = *r.field();
        let z = LinearForm::new(vec![Fp::ONE, Fp::ONE]).unwrap();
        assert!(ci.reduce_mod_linear(&z).unwrap().same_as(&x2));
        let m_img = Ideal::maximal(&r).reduce_mod_linear(&z).unwrap();
        assert!(m_img.same_as(&Ideal::maximal(&line)));
        let bad = LinearForm::new(vec![Fp::ONE, k.element(0)]).unwrap();
        assert_eq!(ci.reduce_mod_linear(&bad).unwrap_err(), Error::BadPivot);
    }

    #[test]
    fn mu_examples() {
        let r = ring(2);
        assert_eq!(m_power(&r, 2).mu(), 3);
        assert_eq!(mono_ideal(&r, &[&[2, 0], &[0, 2]]).mu(), 2);
        assert_eq!(mono_ideal(&r, &[&[2, 0], &[1, 1], &[0, 3]]).mu(), 3);
        assert_eq!(Ideal::unit(&r).mu(), 1);
        assert_eq!(Ideal::zero(&r).mu(), 0);
        // redundant generators do not count
        let red = mono_ideal(&r, &[&[1, 0], &[2, 0], &[1, 1]]);
        assert_eq!(red.mu(), 1);
        assert_eq!(red.mu_profile(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn mu_matches_minimal_generator_count() {
        let mut rng = Rng::new(8);
        for _ in 0..20 {
            let n = rng.range_inclusive(2, 3) as usize;
            let r = ring(n);
            let i = random_graded_ideal(&r, &mut rng, 4, 1, 3);
            assert_eq!(i.mu(), i.minimal_generators().len() as u64);
        }
    }

    #[test]
    fn hilbert_examples() {
        let r = ring(2);
        assert_eq!(Ideal::zero(&r).hilbert(4).values, vec![1, 2, 3, 4, 5]);
        let i = ideal(&r, &[&[(1, &[2, 0]), (-1, &[0, 2])], &[(1, &[1, 1])]]);
        let h = i.hilbert(5);
        assert_eq!(h.values, vec![1, 2, 1, 0, 0, 0]);
        assert_eq!(h.value(40), 0);
        let x = mono_ideal(&r, &[&[1, 0]]);
        assert_eq!(x.hilbert(4).values, vec![1, 1, 1, 1, 1]);
        assert_eq!(x.hilbert(0).value(100), 1);
    }

    #[test]
    fn hilbert_polynomial_takes_over() {
        let mut rng = Rng::new(9);
        for _ in 0..15 {
            let r = ring(3);
            let i = random_graded_ideal(&r, &mut rng, 2, 1, 3);
            let h = i.hilbert(16);
            // past stable_from, first differences of a polynomial of degree
            // dim - 1 vanish at order dim
            let (dim, _) = i.dim_and_height().unwrap();
            let s = h.stable_from as usize;
            let mut diffs: Vec<i64> = h.values[s..].iter().map(|&v| v as i64).collect();
            for _ in 0..dim {
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            assert!(diffs.iter().all(|&d| d == 0), "{i:?}");
        }
    }

    #[test]
    fn colon_length_examples() {
        let r = ring(2);
        let z = generic(&r, 1);
        assert_eq!(m_power(&r, 2).colon_length(&z), Length::Finite(2));
        assert_eq!(mono_ideal(&r, &[&[2, 0], &[0, 2]]).colon_length(&z), Length::Finite(2));
        assert_eq!(mono_ideal(&r, &[&[1, 0]]).colon_length(&z), Length::Finite(0));
        // (x^2, xy) : x = m, which is not of finite colength over I
        let i = mono_ideal(&r, &[&[2, 0], &[1, 1]]);
        assert_eq!(i.colon_length(&LinearForm::coordinate(2, 0)), Length::Infinite);
    }

    #[test]
    fn colon_length_matches_linear_algebra() {
        let mut rng = Rng::new(10);
        for _ in 0..12 {
            let r = ring(2);
            let i = random_graded_ideal(&r, &mut rng, 3, 1, 3);
            let z = random_linear_form(&r, &mut rng);
            let want: u64 = (0..12)
                .map(|d| i.hilbert_value(d) - colon_hilbert_oracle(&i, &z, d))
                .sum();
            match i.colon_length(&z) {
                Length::Finite(v) => assert_eq!(v, want),
                Length::Infinite => panic!("general colon of {i:?} has finite length"),
            }
        }
    }

    #[test]
    fn component_ideal_examples() {
        let r = ring(2);
        let i = mono_ideal(&r, &[&[1, 0], &[0, 3]]);
        assert!(i.component_ideal(0).is_zero());
        assert!(i.component_ideal(2).same_as(&mono_ideal(&r, &[&[2, 0], &[1, 1]])));
        let m2 = m_power(&r, 2);
        assert!(m2.component_ideal(2).same_as(&m2));
        assert!(m2.component_ideal(1).is_zero());
    }

    #[test]
    fn component_ideal_invariants() {
        let mut rng = Rng::new(12);
        for _ in 0..10 {
            let r = ring(3);
            let i = random_graded_ideal(&r, &mut rng, 3, 1, 3);
            for j in 1..5 {
                let c = i.component_ideal(j);
                assert!(i.contains_ideal(&c));
                assert_eq!(c.dim_in_degree(j), i.dim_in_degree(j));
                assert!(c.mu() <= i.dim_in_degree(j));
            }
        }
    }

    #[test]
    fn type_examples() {
        let r = ring(2);
        assert_eq!(m_power(&r, 2).type_of(), Length::Finite(2));
        assert_eq!(mono_ideal(&r, &[&[2, 0], &[0, 2]]).type_of(), Length::Finite(1));
        assert_eq!(mono_ideal(&r, &[&[1, 0]]).type_of(), Length::Finite(0));
        assert_eq!(mono_ideal(&r, &[&[1, 0], &[0, 3]]).type_of(), Length::Finite(1));
    }

    #[test]
    fn dim_and_height_examples() {
        let r3 = ring(3);
        assert_eq!(Ideal::zero(&r3).dim_and_height().unwrap(), (3, 0));
        assert_eq!(mono_ideal(&r3, &[&[1, 0, 0]]).dim_and_height().unwrap(), (2, 1));
        let r = ring(2);
        assert_eq!(m_power(&r, 2).dim_and_height().unwrap(), (0, 2));
        assert_eq!(Ideal::unit(&r).dim_and_height().unwrap_err(), Error::UnitIdeal);
    }

    #[test]
    fn four_term_hilbert_identity() {
        // Hilb((I:z)/I, j) = Hilb(R/I, j) - Hilb(R/I, j+1) + Hilb(R/(I+zR), j+1)
        let mut rng = Rng::new(13);
        for _ in 0..12 {
            let n = rng.range_inclusive(2, 3) as usize;
            let r = ring(n);
            let i = random_graded_ideal(&r, &mut rng, 3, 1, 3);
            let z = random_linear_form(&r, &mut rng);
            if !i.colon_length(&z).is_finite() {
                continue;
            }
            let c = i.colon_linear(&z);
            let iz = i.sum(&Ideal::new(&r, vec![z.to_polynomial(&r)]).unwrap());
            let stop = i.hilbert(0).stable_from.max(c.hilbert(0).stable_from) + 2;
            for j in 0..=stop {
                let lhs = i.hilbert_value(j) as i64 - c.hilbert_value(j) as i64;
                let rhs = i.hilbert_value(j) as i64 - i.hilbert_value(j + 1) as i64
                    + iz.hilbert_value(j + 1) as i64;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn m_times_colon_length_identity() {
        // l((mI:z)/mI) = mu(image of I mod z) + l((I:z)/I)
        let mut rng = Rng::new(14);
        let mut checked = 0;
        for _ in 0..20 {
            let n = rng.range_inclusive(2, 3) as usize;
            let r = ring(n);
            let i = random_graded_ideal(&r, &mut rng, 3, 1, 3);
            let z = crate::poly::random_linear_form_with_pivot(&r, &mut rng);
            let (Length::Finite(a), Length::Finite(b)) =
                (i.m_times().colon_length(&z), i.colon_length(&z))
            else {
                continue;
            };
            let image = i.reduce_mod_linear(&z).unwrap();
            assert_eq!(a, image.mu() + b, "{i:?}");
            checked += 1;
        }
        assert!(checked >= 15);
    }

    #[test]
    fn m_full_hilbert_test_matches_membership() {
        let mut rng = Rng::new(15);
        let mut seen = [0, 0];
        for round in 0..24 {
            let n = rng.range_inclusive(2, 3) as usize;
            let r = ring(n);
            let i = match round % 3 {
                0 => random_graded_ideal(&r, &mut rng, 3, 1, 3),
                1 => {
                    let m = crate::generate::random_monomial_ideal(n, &mut rng, 3, 1, 3);
                    Ideal::from_monomials(&r, &m)
                }
                _ => {
                    // powers of the variables supply non-m-full cases
                    let d = rng.range_inclusive(2, 4) as u32;
                    let gens = (0..n).map(|v| r.pow(&r.var(v), d)).collect();
                    Ideal::new(&r, gens).unwrap()
                }
            };
            let z = random_linear_form(&r, &mut rng);
            let by_series = i.m_full_at(&z);
            let by_membership = i.m_times().colon_linear(&z).same_as(&i);
            assert_eq!(by_series, by_membership);
            seen[by_series as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
    }

    #[test]
    fn extension_keeps_invariants() {
        let r = ring(2);
        let i = mono_ideal(&r, &[&[2, 0], &[0, 2]]);
        let e = i.extend(1).unwrap();
        assert_eq!(e.nvars(), 3);
        assert_eq!(e.mu(), 2);
        assert_eq!(e.dim_and_height().unwrap(), (1, 2));
    }
}
