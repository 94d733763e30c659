//! Monomials, monomial orders, sparse polynomials and linear changes of
//! coordinates over `F_p[x_1, ..., x_n]`.
//!
//! Polynomials are plain sorted term lists; all arithmetic goes through the
//! owning [`PolyRing`], which knows the field and the monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField, Rng};

/// Upper bound on the number of variables of any ring, including the
/// auxiliary elimination variable used for intersections.
pub const MAX_VARS: usize = 16;

/// Exponent vector with cached total degree. Unused trailing slots are zero,
/// so comparisons never need the ring's variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m.deg = exps.iter().sum();
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    /// The first `n` exponents.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m.deg -= other.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
        }
        m.deg = m.exps.iter().map(|&e| e as u32).sum();
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Zero-based index of the last variable dividing the monomial.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Replaces the exponent of variable `i`.
    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    /// Sum of the exponents of variables in `range`.
    fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }
}

/// All monomials of degree `d` in `n` variables, in descending grevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one()] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| grevlex_cmp(b, a));
    out
}

/// Graded reverse lexicographic comparison with `x_1 > x_2 > ... > x_n`.
#[inline]
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

fn grevlex_range_cmp(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    match a
        .partial_degree(range.clone())
        .cmp(&b.partial_degree(range.clone()))
    {
        Ordering::Equal => {}
        o => return o,
    }
    for i in range.rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    /// Block order eliminating the last `k` variables: grevlex on the
    /// eliminated block first, ties broken by grevlex on the rest.
    EliminateLast(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_cmp(a, b),
            MonomialOrder::EliminateLast(k) => grevlex_range_cmp(a, b, n - k..n)
                .then_with(|| grevlex_range_cmp(a, b, 0..n - k)),
        }
    }
}

/// Sparse polynomial: terms sorted strictly descending in the ring's order,
/// no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Fp)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Fp)] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Fp)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Option<Fp> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Whether every term avoids the variables with index `>= n`.
    pub fn lives_in_first(&self, n: usize) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| (n..MAX_VARS).all(|i| m.exponent(i) == 0))
    }

    pub fn into_terms(self) -> Vec<(Monomial, Fp)> {
        self.terms
    }
}

/// The ring `F_p[x_1, ..., x_n]` with a monomial order and printable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    n: usize,
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

/// Default variable names: `x, y, z, w` for up to four variables, `x1..xn`
/// beyond that.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl PolyRing {
    pub fn new(field: PrimeField, names: Vec<String>) -> Result<Arc<Self>> {
        let n = names.len();
        if n == 0 || n >= MAX_VARS {
            return Err(Error::VariableCount {
                got: n,
                max: MAX_VARS - 1,
            });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Usage(format!("duplicate variable name `{a}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            n,
            field,
            names,
            order: MonomialOrder::Grevlex,
        }))
    }

    /// Grevlex ring with default names.
    pub fn with_vars(field: PrimeField, n: usize) -> Result<Arc<Self>> {
        PolyRing::new(field, default_names(n))
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same field and variable names, possibly a different order.
    pub fn same_variables(&self, other: &PolyRing) -> bool {
        self.field == other.field && self.names == other.names
    }

    /// This ring with `k` extra trailing variables and an order eliminating them.
    pub fn with_elimination_vars(&self, k: usize) -> Result<Arc<Self>> {
        if self.n + k >= MAX_VARS {
            return Err(Error::VariableCount {
                got: self.n + k,
                max: MAX_VARS - 1,
            });
        }
        let mut names = self.names.clone();
        names.extend((0..k).map(|i| format!("_t{i}")));
        Ok(Arc::new(PolyRing {
            n: self.n + k,
            field: self.field,
            names,
            order: MonomialOrder::EliminateLast(k),
        }))
    }

    /// Grevlex ring on the first `n - 1` variables, i.e. `R / x_n R`.
    pub fn drop_last(&self) -> Result<Arc<Self>> {
        PolyRing::new(self.field, self.names[..self.n - 1].to_vec())
    }

    /// Grevlex ring with `k` more variables (default-style names appended).
    pub fn adjoin(&self, k: usize) -> Result<Arc<Self>> {
        let mut names = self.names.clone();
        let mut next = 1;
        while names.len() < self.n + k {
            let cand = format!("v{next}");
            next += 1;
            if !names.contains(&cand) {
                names.push(cand);
            }
        }
        PolyRing::new(self.field, names)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.n)
    }

    pub fn constant(&self, c: Fp) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Fp::ONE)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.n);
        Polynomial {
            terms: vec![(Monomial::var(i), Fp::ONE)],
        }
    }

    pub fn monomial(&self, m: Monomial, c: Fp) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Fp)>) -> Polynomial {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Fp)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.field.add(last.1, c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|t| t.1.is_zero()) {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    /// Integer-coefficient convenience constructor: `[(coeff, exponents)]`.
    pub fn poly(&self, terms: &[(i64, &[u32])]) -> Polynomial {
        self.from_terms(
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), self.field.element(*c)))
                .collect(),
        )
    }

    /// Re-sorts a polynomial coming from a ring with another order.
    pub fn import(&self, f: &Polynomial) -> Polynomial {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    fn from_accumulator(&self, acc: HashMap<Monomial, Fp>) -> Polynomial {
        let mut terms: Vec<_> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    fn merge(&self, f: &Polynomial, g: &Polynomial, gscale: Fp, gshift: &Monomial) -> Polynomial {
        let k = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let (ft, gt) = (&f.terms, &g.terms);
        while i < ft.len() && j < gt.len() {
            let gm = gt[j].0.mul(gshift);
            match self.cmp(&ft[i].0, &gm) {
                Ordering::Greater => {
                    out.push(ft[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm, k.mul(gt[j].1, gscale)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(ft[i].1, k.mul(gt[j].1, gscale));
                    if !c.is_zero() {
                        out.push((gm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&ft[i..]);
        for t in &gt[j..] {
            out.push((t.0.mul(gshift), k.mul(t.1, gscale)));
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.merge(f, g, Fp::ONE, &Monomial::one())
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.merge(f, g, self.field.neg(Fp::ONE), &Monomial::one())
    }

    /// `f - c * m * g`.
    pub fn sub_scaled(&self, f: &Polynomial, c: Fp, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.merge(f, g, self.field.neg(c), m)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            terms: f.terms.iter().map(|&(m, c)| (m, self.field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial, c: Fp) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|&(m, a)| (m, self.field.mul(a, c))).collect(),
        }
    }

    /// `c * m * f`; monomial multiplication preserves the order.
    pub fn mul_term(&self, f: &Polynomial, c: Fp, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|&(t, a)| (t.mul(m), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        if f.len() == 1 {
            return self.mul_term(g, f.terms[0].1, &f.terms[0].0);
        }
        if g.len() == 1 {
            return self.mul_term(f, g.terms[0].1, &g.terms[0].0);
        }
        let mut acc: HashMap<Monomial, Fp> = HashMap::with_capacity(f.len() * g.len());
        for &(a, ca) in &f.terms {
            for &(b, cb) in &g.terms {
                let e = acc.entry(a.mul(&b)).or_insert(Fp::ZERO);
                *e = self.field.add(*e, self.field.mul(ca, cb));
            }
        }
        self.from_accumulator(acc)
    }

    pub fn pow(&self, f: &Polynomial, e: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Scales so the lead coefficient is one.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.lead_coeff() {
            None => Polynomial::zero(),
            Some(c) if c == Fp::ONE => f.clone(),
            Some(c) => self.scale(f, self.field.inv(c).expect("nonzero lead")),
        }
    }

    /// Exact quotient `f / g`, `None` when `g` does not divide `f`.
    pub fn div_exact(&self, f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
        let (gl, gc) = *g.lead()?;
        let ginv = self.field.inv(gc).ok()?;
        let mut rest = f.clone();
        let mut quotient = Vec::new();
        while let Some(&(m, c)) = rest.lead() {
            let q = m.checked_div(&gl)?;
            let qc = self.field.mul(c, ginv);
            quotient.push((q, qc));
            rest = self.sub_scaled(&rest, qc, &q, g);
        }
        Some(self.from_terms(quotient))
    }

    /// Divides every term by `x_i` where possible; used for colon by a variable.
    pub fn divide_by_var_if_divisible(&self, f: &Polynomial, i: usize) -> Polynomial {
        if f.terms.iter().all(|(m, _)| m.exponent(i) > 0) {
            let v = Monomial::var(i);
            Polynomial {
                terms: f
                    .terms
                    .iter()
                    .map(|&(m, c)| (m.checked_div(&v).unwrap(), c))
                    .collect(),
            }
        } else {
            f.clone()
        }
    }

    /// Reinterprets a polynomial of `source` (whose variables are a prefix
    /// of this ring's) in this ring.
    pub fn embed(&self, f: &Polynomial) -> Polynomial {
        self.import(f)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..self.n {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Terms in descending order, e.g. `x^2 + 3*x*y - y^2`.
    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            let v = self.field.signed(*c);
            let (neg, a) = (v < 0, v.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&a.to_string());
            } else if a == 1 {
                s.push_str(&self.format_monomial(m));
            } else {
                s.push_str(&format!("{a}*{}", self.format_monomial(m)));
            }
        }
        s
    }
}

/// A nonzero linear form `c_1 x_1 + ... + c_n x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Fp>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Fp>) -> Option<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(LinearForm { coeffs })
        }
    }

    /// The coordinate form `x_i` (zero-based) in `n` variables.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coeffs = vec![Fp::ZERO; n];
        coeffs[i] = Fp::ONE;
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Last variable with nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap()
    }

    pub fn to_polynomial(&self, ring: &PolyRing) -> Polynomial {
        ring.from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (Monomial::var(i), c))
                .collect(),
        )
    }
}

/// Uniformly random nonzero linear form.
pub fn random_linear_form(ring: &PolyRing, rng: &mut Rng) -> LinearForm {
    loop {
        let coeffs = (0..ring.nvars())
            .map(|_| ring.field().random_element(rng, false))
            .collect();
        if let Some(z) = LinearForm::new(coeffs) {
            return z;
        }
    }
}

/// Random linear form whose last coefficient is nonzero, as needed by
/// [`substitute_last_variable`].
pub fn random_linear_form_with_pivot(ring: &PolyRing, rng: &mut Rng) -> LinearForm {
    loop {
        let z = random_linear_form(ring, rng);
        if !z.coeffs[ring.nvars() - 1].is_zero() {
            return z;
        }
    }
}

/// An invertible substitution `x_i -> sum_j M[i][j] x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    field: PrimeField,
    matrix: Vec<Vec<Fp>>,
}

fn rank_and_det(field: &PrimeField, mut a: Vec<Vec<Fp>>) -> Fp {
    let n = a.len();
    let mut det = Fp::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Fp::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            det = field.neg(det);
        }
        det = field.mul(det, a[col][col]);
        let inv = field.inv(a[col][col]).unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = field.mul(a[r][col], inv);
            for c in col..n {
                let v = field.mul(f, a[col][c]);
                a[r][c] = field.sub(a[r][c], v);
            }
        }
    }
    det
}

impl LinearChange {
    pub fn new(field: PrimeField, matrix: Vec<Vec<Fp>>) -> Result<Self> {
        let n = matrix.len();
        assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");
        if rank_and_det(&field, matrix.clone()).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange { field, matrix })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Fp::ONE } else { Fp::ZERO }).collect())
            .collect();
        LinearChange { field, matrix }
    }

    pub fn matrix(&self) -> &[Vec<Fp>] {
        &self.matrix
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    pub fn determinant(&self) -> Fp {
        rank_and_det(&self.field, self.matrix.clone())
    }

    /// The change applying `self` first and `next` second:
    /// `apply(apply(f, self), next) == apply(f, self.then(next))`.
    pub fn then(&self, next: &LinearChange) -> LinearChange {
        let k = &self.field;
        let n = self.nvars();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Fp::ZERO, |acc, l| {
                            k.add(acc, k.mul(self.matrix[i][l], next.matrix[l][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        LinearChange {
            field: self.field,
            matrix,
        }
    }

    pub fn inverse(&self) -> LinearChange {
        let k = &self.field;
        let n = self.nvars();
        let mut a: Vec<Vec<Fp>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { Fp::ONE } else { Fp::ZERO }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
            a.swap(piv, col);
            let inv = k.inv(a[col][col]).unwrap();
            for c in 0..2 * n {
                a[col][c] = k.mul(a[col][c], inv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = k.mul(f, a[col][c]);
                    a[r][c] = k.sub(a[r][c], v);
                }
            }
        }
        LinearChange {
            field: self.field,
            matrix: a.into_iter().map(|r| r[n..].to_vec()).collect(),
        }
    }

    /// Invertible change sending the linear form `z` to `x_n`: the returned
    /// `phi` satisfies `apply(z, phi) == x_n`.
    pub fn moving_to_last(z: &LinearForm, field: PrimeField) -> LinearChange {
        let n = z.nvars();
        let k = z.pivot();
        // `back` maps x_n -> z and x_k -> x_n; its inverse sends z to x_n.
        let mut back = LinearChange::identity(field, n).matrix;
        if k != n - 1 {
            back[k] = vec![Fp::ZERO; n];
            back[k][n - 1] = Fp::ONE;
        }
        back[n - 1] = z.coeffs.clone();
        LinearChange {
            field,
            matrix: back,
        }
        .inverse()
    }

    pub fn apply(&self, ring: &PolyRing, f: &Polynomial) -> Polynomial {
        apply_linear_change(ring, f, self)
    }
}

/// Substitutes `x_i -> sum_j M[i][j] x_j` in `f` and re-expands.
pub fn apply_linear_change(ring: &PolyRing, f: &Polynomial, change: &LinearChange) -> Polynomial {
    let n = ring.nvars();
    assert_eq!(change.nvars(), n, "change and ring disagree on variable count");
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            LinearForm {
                coeffs: change.matrix[i].clone(),
            }
            .to_polynomial(ring)
        })
        .collect();
    substitute(ring, ring, f, &images)
}

/// Replaces each variable `x_i` of `source` by `images[i]` (a polynomial of
/// `target`) and expands.
fn substitute(
    source: &PolyRing,
    target: &PolyRing,
    f: &Polynomial,
    images: &[Polynomial],
) -> Polynomial {
    let n = source.nvars();
    let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
    let field = target.field();
    let mut acc: HashMap<Monomial, Fp> = HashMap::new();
    for (m, c) in f.terms() {
        let mut prod = target.constant(*c);
        for i in 0..n {
            let e = m.exponent(i) as usize;
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e {
                let next = target.mul(powers[i].last().unwrap(), &images[i]);
                powers[i].push(next);
            }
            prod = target.mul(&prod, &powers[i][e]);
        }
        for (t, a) in prod.into_terms() {
            let e = acc.entry(t).or_insert(Fp::ZERO);
            *e = field.add(*e, a);
        }
    }
    target.from_accumulator(acc)
}

/// Image of `f` in `R / zR`, identified with `target = K[x_1..x_{n-1}]` via
/// `x_n = -(c_1 x_1 + ... + c_{n-1} x_{n-1}) / c_n`.
pub fn substitute_last_variable(
    ring: &PolyRing,
    target: &PolyRing,
    f: &Polynomial,
    z: &LinearForm,
) -> Result<Polynomial> {
    let n = ring.nvars();
    assert_eq!(target.nvars() + 1, n, "target ring must drop one variable");
    let k = ring.field();
    let cn = z.coeffs[n - 1];
    if cn.is_zero() {
        return Err(Error::BadPivot);
    }
    let scale = k.neg(k.inv(cn)?);
    let last = target.from_terms(
        (0..n - 1)
            .map(|i| (Monomial::var(i), k.mul(scale, z.coeffs[i])))
            .collect(),
    );
    let mut images: Vec<Polynomial> = (0..n - 1).map(|i| target.var(i)).collect();
    images.push(last);
    Ok(substitute(ring, target, f, &images))
}

/// Random invertible change with dense entries, resampled until the
/// determinant is nonzero. Also returns the number of rejected samples.
pub fn random_linear_change(ring: &PolyRing, rng: &mut Rng) -> (LinearChange, usize) {
    let n = ring.nvars();
    let field = *ring.field();
    let mut rejected = 0;
    loop {
        let matrix: Vec<Vec<Fp>> = (0..n)
            .map(|_| (0..n).map(|_| field.random_element(rng, false)).collect())
            .collect();
        match LinearChange::new(field, matrix) {
            Ok(c) => return (c, rejected),
            Err(_) => rejected += 1,
        }
    }
}
