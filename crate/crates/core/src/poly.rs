//! Multivariate polynomials over F_p with terms kept sorted descending under
//! the ring's term order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, TermOrder};

#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: TermOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: PrimeField, vars: Vec<String>, order: TermOrder) -> RingRef {
        Arc::new(Ring { field, vars, order })
    }

    /// The coordinate ring of P^n over F_p: variables x,y,z,w for n = 3,
    /// x0..xn otherwise.
    pub fn projective(field: PrimeField, n: usize, order: TermOrder) -> RingRef {
        let vars = if n == 3 {
            vec!["x".into(), "y".into(), "z".into(), "w".into()]
        } else {
            (0..=n).map(|i| format!("x{i}")).collect()
        };
        Ring::new(field, vars, order)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Terms sorted strictly descending under the ring order; no zero
/// coefficients, no duplicate monomials.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u64)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        Ring::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: u64) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u64) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    pub fn variable(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    /// Linear form from a coefficient vector, one entry per variable.
    pub fn linear_form(ring: &RingRef, coeffs: &[u64]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::var(ring.nvars(), i), c))
            .collect();
        Self::from_terms(ring, terms)
    }

    /// Normalizes an arbitrary term list: reduces coefficients, merges
    /// duplicate monomials, drops zeros, sorts descending.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, u64)>) -> Self {
        let f = ring.field();
        let ord = ring.order();
        let mut terms: Vec<(Monomial, u64)> =
            terms.into_iter().map(|(m, c)| (m, c % f.modulus())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Polynomial { ring: ring.clone(), terms: merged }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c)).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Total degree of the leading term; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn homogeneous_components(&self) -> Vec<Polynomial> {
        let mut by_deg: std::collections::BTreeMap<u32, Vec<(Monomial, u64)>> = Default::default();
        for (m, c) in &self.terms {
            by_deg.entry(m.degree()).or_default().push((m.clone(), *c));
        }
        by_deg.into_values().map(|ts| Polynomial::from_terms(&self.ring, ts)).collect()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch");
        self.merge(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch");
        let f = self.ring.field();
        self.merge(other, f.neg(1))
    }

    fn merge(&self, other: &Polynomial, scale_other: u64) -> Polynomial {
        let f = self.ring.field();
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_self = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => match ord.cmp(&a.0, &b.0) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let c = f.add(a.1, f.mul(scale_other, b.1));
                        if c != 0 {
                            out.push((a.0.clone(), c));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                },
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_self {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                let (m, c) = &other.terms[j];
                let c = f.mul(scale_other, *c);
                if c != 0 {
                    out.push((m.clone(), c));
                }
                j += 1;
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplication by a single term, preserving sortedness.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms =
            self.terms.iter().map(|(mm, a)| (mm.mul(m), f.mul(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, *c));
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("ring mismatch")
    }

    /// Divides all coefficients by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.ring.field().inv(*lc).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    /// Everything below the leading term. Assumes sortedness, does not
    /// re-normalize.
    pub(crate) fn tail(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms[1..].to_vec() }
    }

    /// Builds from terms already strictly descending under the ring order.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, u64)>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < ring.field().modulus()));
        Polynomial { ring: ring.clone(), terms }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Ring::same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Re-sorts the terms into `target`, which must share field and
    /// variables with the current ring but may use a different order.
    pub fn with_ring(&self, target: &RingRef) -> Polynomial {
        assert_eq!(self.ring.nvars(), target.nvars());
        assert_eq!(self.ring.field(), target.field());
        Polynomial::from_terms(target, self.terms.clone())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(out, " + ")?;
            }
            if *c != 1 || m.is_one() {
                write!(out, "{c}")?;
                if !m.is_one() {
                    write!(out, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    if !first {
                        write!(out, "*")?;
                    }
                    first = false;
                    write!(out, "{}", vars[i])?;
                    if e > 1 {
                        write!(out, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
