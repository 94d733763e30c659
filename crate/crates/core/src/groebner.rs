//! Reduced Gröbner bases by Buchberger's algorithm.
//!
//! Pairs are selected by the normal strategy (smallest sugar degree, then
//! smallest lcm); useless pairs are discarded with Buchberger's product and
//! chain criteria in the Gebauer–Möller formulation.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::sync::Arc;

use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// A reduced Gröbner basis: monic elements, pairwise distinct leads, no term
/// of any element divisible by another element's lead. Elements are sorted by
/// ascending lead monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_variables(&other.ring) && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lead_monomial() == Some(Monomial::one())
    }

    pub fn leads(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.elements.iter().map(|g| g.lead_monomial().unwrap())
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(&self.ring, f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn lead_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), self.leads())
    }

    /// Reduced basis from a set already known to be a Gröbner basis of its
    /// ideal (not necessarily minimal or reduced).
    pub fn from_groebner_set(ring: &Arc<PolyRing>, set: Vec<Polynomial>) -> GroebnerBasis {
        let mut polys: Vec<Polynomial> = set
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| ring.monic(&p))
            .collect();
        polys.sort_by(|a, b| ring.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
        polys.dedup();
        let mut minimal: Vec<Polynomial> = Vec::with_capacity(polys.len());
        for p in polys {
            let lm = p.lead_monomial().unwrap();
            if !minimal.iter().any(|q| q.lead_monomial().unwrap().divides(&lm)) {
                minimal.push(p);
            }
        }
        interreduce(ring, minimal)
    }

    /// Basis obtained by keeping only elements free of the eliminated
    /// trailing variables, re-expressed in `target`.
    pub fn eliminate(&self, target: &Arc<PolyRing>) -> GroebnerBasis {
        let keep = target.nvars();
        let set = self
            .elements
            .iter()
            .filter(|g| g.lives_in_first(keep))
            .map(|g| target.import(g))
            .collect();
        GroebnerBasis::from_groebner_set(target, set)
    }

    /// Checks the Buchberger criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let g = &self.elements;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let s = s_polynomial(&self.ring, &g[i], &g[j]);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks reducedness: monic, no term divisible by another element's lead.
    pub fn is_reduced(&self) -> bool {
        let leads: Vec<Monomial> = self.leads().collect();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.lead_coeff() == Some(crate::field::Fp::ONE)
                && g.terms().iter().all(|(m, _)| {
                    leads
                        .iter()
                        .enumerate()
                        .all(|(j, l)| j == i || !l.divides(m))
                })
        })
    }
}

/// Full reduction of `f` by `basis` (any set of nonzero polynomials).
pub fn normal_form(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    reduce_from(ring, f.clone(), 0, basis)
}

/// Reduces every term at position `start` or later. Terms ahead of the one
/// being reduced are larger than anything the reducer touches, so they stay
/// in place and form the finished part of the remainder.
fn reduce_from<P: Borrow<Polynomial>>(
    ring: &PolyRing,
    mut f: Polynomial,
    mut pos: usize,
    basis: &[P],
) -> Polynomial {
    let k = ring.field();
    while pos < f.len() {
        let (m, c) = f.terms()[pos];
        match basis.iter().map(Borrow::borrow).find(|g: &&Polynomial| g.lead().unwrap().0.divides(&m)) {
            Some(g) => {
                let (l, lc) = *g.lead().unwrap();
                let q = m.checked_div(&l).unwrap();
                f = ring.sub_scaled(&f, k.div(c, lc).unwrap(), &q, g);
            }
            None => pos += 1,
        }
    }
    f
}

fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, cf) = *f.lead().unwrap();
    let (lg, cg) = *g.lead().unwrap();
    let l = lf.lcm(&lg);
    let k = ring.field();
    let a = ring.mul_term(f, k.inv(cf).unwrap(), &l.checked_div(&lf).unwrap());
    ring.sub_scaled(&a, k.inv(cg).unwrap(), &l.checked_div(&lg).unwrap(), g)
}

fn interreduce(ring: &Arc<PolyRing>, minimal: Vec<Polynomial>) -> GroebnerBasis {
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p)
            .collect();
        let full = reduce_from(ring, minimal[i].clone(), 1, &others);
        out.push(ring.monic(&full));
    }
    out.sort_by(|a, b| ring.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    GroebnerBasis {
        ring: ring.clone(),
        elements: out,
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<'a> {
    ring: &'a Arc<PolyRing>,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Builder<'a> {
    fn lead(&self, i: usize) -> Monomial {
        self.polys[i].lead_monomial().unwrap()
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.lead(i), self.lead(j));
        let lcm = a.lcm(&b);
        let sa = self.sugar[i] + lcm.degree() - a.degree();
        let sb = self.sugar[j] + lcm.degree() - b.degree();
        Pair {
            i,
            j,
            lcm,
            sugar: sa.max(sb),
        }
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let basis: Vec<&Polynomial> = self.active.iter().map(|&i| &self.polys[i]).collect();
        reduce_from(self.ring, f.clone(), 0, &basis)
    }

    /// Gebauer–Möller update with the new element `h` (index `hi`).
    fn update(&mut self, hi: usize) {
        let t = self.lead(hi);
        let candidates: Vec<Pair> = self.active.iter().map(|&g| self.pair(hi, g)).collect();
        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let coprime = t.is_coprime(&self.lead(p.j));
            let dominated = candidates[idx + 1..]
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(*p);
            }
        }
        // product criterion
        kept.retain(|p| !t.is_coprime(&self.lead(p.j)));
        // old pairs made redundant by t
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !t.divides(&p.lcm)
                    || self.lead(p.i).lcm(&t) == p.lcm
                    || self.lead(p.j).lcm(&t) == p.lcm
            })
            .collect();
        self.pairs.extend(kept);
        let polys = &self.polys;
        self.active
            .retain(|&g| !t.divides(&polys[g].lead_monomial().unwrap()));
        self.active.push(hi);
    }

    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let h = self.ring.monic(&h);
        self.polys.push(h);
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| ring.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in the ring's
/// order. Zero generators are ignored.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> GroebnerBasis {
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| ring.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0))
    });
    let mut b = Builder {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let sugar = g.degree().unwrap();
        let h = b.reduce(&g);
        if !h.is_zero() {
            if h.lead_monomial() == Some(Monomial::one()) {
                return unit_basis(ring);
            }
            b.insert(h, sugar);
        }
    }
    while let Some(p) = b.next_pair() {
        let s = s_polynomial(ring, &b.polys[p.i], &b.polys[p.j]);
        let h = b.reduce(&s);
        if h.is_zero() {
            continue;
        }
        if h.lead_monomial() == Some(Monomial::one()) {
            return unit_basis(ring);
        }
        b.insert(h, p.sugar);
    }
    let minimal: Vec<Polynomial> = b.active.iter().map(|&i| b.polys[i].clone()).collect();
    GroebnerBasis::from_groebner_set(ring, minimal)
}

fn unit_basis(ring: &Arc<PolyRing>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        elements: vec![ring.one()],
    }
}

/// Orders bases by their lead monomials; handy for deterministic output.
pub fn compare_leads(ring: &PolyRing, a: &Polynomial, b: &Polynomial) -> Ordering {
    ring.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0)
}
