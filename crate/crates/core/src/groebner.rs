//! Buchberger's algorithm with reduced Gröbner bases, normal forms, variable
//! elimination and ideal intersection.
//!
//! Pair selection is the normal strategy (minimal lcm degree first, ties by
//! the term order on the lcm, which coincides with the sugar degree on
//! homogeneous input). Buchberger's coprimality and chain criteria prune the
//! pair queue.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Polynomial, Ring, RingRef};

/// Fully reduced (tail-reduced) remainder of `f` modulo `basis`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut work = f.clone();
    let mut out: Vec<(Monomial, u64)> = Vec::new();
    'outer: while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading_term().expect("nonzero");
            (m.clone(), c)
        };
        for g in basis {
            let Some(gm) = g.leading_monomial() else { continue };
            if gm.divides(&lm) {
                let gc = g.leading_term().expect("nonzero").1;
                let q = gm.div_into(&lm);
                let c = field.div(lc, gc).expect("nonzero leading coefficient");
                work = work.sub(&g.mul_term(&q, c));
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        out.push((lm, lc));
        work = work.tail();
    }
    Polynomial::from_sorted_terms(&ring, out)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let lcm = fm.lcm(gm);
    let a = f.mul_term(&fm.div_into(&lcm), field.inv(fc).expect("nonzero"));
    let b = g.mul_term(&gm.div_into(&lcm), field.inv(gc).expect("nonzero"));
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, under the ring's
/// own order. Empty input (or all-zero input) yields the empty basis.
pub fn buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    let ord = ring.order();

    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert((i, j));
        }
    }

    let lcm_of = |basis: &[Polynomial], i: usize, j: usize| -> Monomial {
        basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap())
    };

    while !pending.is_empty() {
        // normal selection: minimal lcm degree, ties by the term order
        let &(i, j) = pending
            .iter()
            .min_by(|&&(i1, j1), &&(i2, j2)| {
                let l1 = lcm_of(&basis, i1, j1);
                let l2 = lcm_of(&basis, i2, j2);
                l1.degree()
                    .cmp(&l2.degree())
                    .then_with(|| ord.cmp(&l1, &l2))
                    .then_with(|| (i1, j1).cmp(&(i2, j2)))
            })
            .expect("nonempty");
        pending.remove(&(i, j));

        let lm_i = basis[i].leading_monomial().unwrap();
        let lm_j = basis[j].leading_monomial().unwrap();
        if lm_i.coprime(lm_j) {
            continue; // product criterion
        }
        let lcm = lm_i.lcm(lm_j);
        // chain criterion: some k with lt(k) | lcm and both flanking pairs done
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let new = basis.len();
            basis.push(r.monic());
            for k in 0..new {
                pending.insert((k, new));
            }
        }
    }

    reduce_basis(basis)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Interreduces a Gröbner basis to the unique reduced one: minimal leading
/// terms, monic, every element fully reduced against the others.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    if basis.is_empty() {
        return basis;
    }
    let ord = basis[0].ring().order();
    // drop elements whose lead is divisible by another lead
    let mut keep: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for (idx, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != idx && h.leading_monomial().unwrap().divides(lm) && (k < idx || h.leading_monomial().unwrap() != lm));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // tail-reduce each against the rest until stable
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<Polynomial> =
                keep.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
            let r = reduce(&keep[i], &others).monic();
            if r != keep[i] {
                keep[i] = r;
                changed = true;
            }
        }
        keep.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    keep
}

/// Post-hoc Buchberger criterion: every S-polynomial reduces to zero.
pub fn satisfies_buchberger_criterion(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if !reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// A homogeneous ideal with a lazily computed reduced Gröbner basis under
/// the ring's order. The cache is write-once.
#[derive(Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert!(Ring::same_ring(g.ring(), ring), "generator from a different ring");
        }
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| buchberger(&self.gens))
    }

    /// Fully reduced normal form modulo the cached basis; computes the basis
    /// on first use.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !Ring::same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(reduce(f, self.groebner_basis()))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !Ring::same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    /// I ∩ J via the auxiliary variable t: eliminate t from t·I + (1−t)·J
    /// under a block order. Generators coming back from the elimination are
    /// split into homogeneous components (each component of an element of a
    /// homogeneous ideal lies in the ideal), so the result is presented by
    /// homogeneous generators; it is stored with its reduced basis.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !Ring::same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ring = &self.ring;
        let mut vars = vec!["t#".to_string()];
        vars.extend(ring.vars().iter().cloned());
        let ext = Ring::new(ring.field(), vars, TermOrder::Elim(1));
        let t = Polynomial::variable(&ext, 0);
        let one_minus_t = Polynomial::constant(&ext, 1).sub(&t);

        let lift = |g: &Polynomial| -> Polynomial {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32];
                    e.extend_from_slice(m.exponents());
                    (Monomial::new(e), *c)
                })
                .collect();
            Polynomial::from_terms(&ext, terms)
        };

        let mut gens_ext: Vec<Polynomial> =
            self.gens.iter().map(|g| t.mul(&lift(g))).collect();
        gens_ext.extend(other.gens.iter().map(|h| one_minus_t.mul(&lift(h))));

        let gb = buchberger(&gens_ext);
        let mut projected: Vec<Polynomial> = Vec::new();
        for g in &gb {
            if g.terms().iter().all(|(m, _)| m.free_of_first(1)) {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), *c))
                    .collect();
                let back = Polynomial::from_terms(ring, terms);
                projected.extend(back.homogeneous_components());
            }
        }
        let reduced = buchberger(&projected);
        let out = Ideal::new(ring, reduced.clone());
        let _ = out.gb.set(reduced);
        Ok(out)
    }

    /// Elimination ideal: drops the first `k` variables. Returns an ideal in
    /// the ring on the remaining variables (grevlex); `k = 0` is the
    /// identity.
    pub fn eliminate(&self, k: usize) -> Ideal {
        if k == 0 {
            return self.clone();
        }
        assert!(k <= self.ring.nvars());
        let elim_ring = Ring::new(self.ring.field(), self.ring.vars().to_vec(), TermOrder::Elim(k));
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.with_ring(&elim_ring)).collect();
        let gb = buchberger(&gens);
        let target = Ring::new(
            self.ring.field(),
            self.ring.vars()[k..].to_vec(),
            TermOrder::GrevLex,
        );
        let mut out = Vec::new();
        for g in &gb {
            if g.terms().iter().all(|(m, _)| m.free_of_first(k)) {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (Monomial::new(m.exponents()[k..].to_vec()), *c))
                    .collect();
                out.push(Polynomial::from_terms(&target, terms));
            }
        }
        Ideal::new(&target, out)
    }

    /// Equality of ideals: the reduced Gröbner bases under the common ring
    /// order coincide.
    pub fn ideal_equal(&self, other: &Ideal) -> Result<bool> {
        if !Ring::same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    /// Hilbert function of S/I in degree d, counted on the staircase: the
    /// number of degree-d monomials outside the leading-term ideal.
    pub fn hilbert_function(&self, d: u32) -> usize {
        let leads: Vec<&Monomial> =
            self.groebner_basis().iter().filter_map(|g| g.leading_monomial()).collect();
        monomials_of_degree(self.ring.nvars(), d)
            .iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count()
    }
}

/// All monomials of total degree `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(exps: &mut Vec<u32>, idx: usize, rem: u32, out: &mut Vec<Monomial>) {
        if idx + 1 == exps.len() {
            exps[idx] = rem;
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=rem {
            exps[idx] = e;
            rec(exps, idx + 1, rem - e, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(&mut exps, 0, d, &mut out);
    out
}

/// Hilbert function of S/(gens) in degree d by plain linear algebra over the
/// degree-d monomial basis. Independent of any Gröbner machinery; serves as
/// the oracle for the staircase count and the Betti alternating sum.
pub fn hilbert_function_linalg(ring: &RingRef, gens: &[Polynomial], d: u32) -> usize {
    use crate::matrix::DenseMatrix;
    let mons = monomials_of_degree(ring.nvars(), d);
    let index: std::collections::HashMap<&Monomial, usize> =
        mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        assert!(g.is_homogeneous());
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), d - dg) {
            let prod = g.mul_term(&m, 1);
            let mut row = vec![0u64; mons.len()];
            for (mm, c) in prod.terms() {
                row[index[mm]] = *c;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return mons.len();
    }
    let mat = DenseMatrix::from_rows(ring.field(), &rows).expect("uniform rows");
    mons.len() - mat.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring() -> RingRef {
        Ring::projective(PrimeField::new(32003).unwrap(), 3, TermOrder::GrevLex)
    }

    fn v(r: &RingRef, i: usize) -> Polynomial {
        Polynomial::variable(r, i)
    }

    fn segre(r: &RingRef) -> Polynomial {
        v(r, 0).mul(&v(r, 3)).sub(&v(r, 1).mul(&v(r, 2)))
    }

    #[test]
    fn already_a_basis() {
        let r = ring();
        let gb = buchberger(&[v(&r, 0), v(&r, 1)]);
        assert_eq!(gb, vec![v(&r, 1), v(&r, 0)]);
    }

    #[test]
    fn principal_ideal() {
        let r = ring();
        let gb = buchberger(&[segre(&r)]);
        assert_eq!(gb, vec![segre(&r).monic()]);
        assert_eq!(gb[0].scale(32003 - 1), segre(&r)); // lead yz, so monic = yz - xw
    }

    #[test]
    fn k11_ideal_single_spair_reduces() {
        let r = ring();
        // (x, yz): the one S-pair reduces to zero
        let yz = v(&r, 1).mul(&v(&r, 2));
        let gens = vec![v(&r, 0), yz.clone()];
        assert!(reduce(&s_polynomial(&gens[0], &gens[1]), &gens).is_zero());
        let gb = buchberger(&gens);
        assert_eq!(gb.len(), 2);
        assert!(satisfies_buchberger_criterion(&gb));
    }

    #[test]
    fn normal_forms() {
        let r = ring();
        let yz = v(&r, 1).mul(&v(&r, 2));
        let i = Ideal::new(&r, vec![v(&r, 0), yz.clone()]);
        // generator reduces to zero
        assert!(i.normal_form(&v(&r, 0)).unwrap().is_zero());
        // 1 is irreducible mod a proper homogeneous ideal
        let one = Polynomial::constant(&r, 1);
        assert_eq!(i.normal_form(&one).unwrap(), one);
        // yz*w in (x, yz)
        assert!(i.normal_form(&yz.mul(&v(&r, 3))).unwrap().is_zero());
    }

    #[test]
    fn intersect_two_concurrent_lines() {
        let r = ring();
        let i = Ideal::new(&r, vec![v(&r, 0), v(&r, 1)]);
        let j = Ideal::new(&r, vec![v(&r, 0), v(&r, 2)]);
        let meet = i.intersect(&j).unwrap();
        // oracle: double inclusion against (x, yz)
        let expected = Ideal::new(&r, vec![v(&r, 0), v(&r, 1).mul(&v(&r, 2))]);
        for g in meet.generators() {
            assert!(expected.contains(g));
        }
        for g in expected.generators() {
            assert!(meet.contains(g));
        }
        assert!(meet.ideal_equal(&expected).unwrap());
    }

    #[test]
    fn intersect_is_idempotent() {
        let r = ring();
        let i = Ideal::new(&r, vec![v(&r, 0), v(&r, 1).mul(&v(&r, 2))]);
        let ii = i.intersect(&i).unwrap();
        assert!(ii.ideal_equal(&i).unwrap());
    }

    #[test]
    fn ideal_equality() {
        let r = ring();
        let yz = v(&r, 1).mul(&v(&r, 2));
        let i = Ideal::new(&r, vec![v(&r, 0), yz.clone()]);
        let j = Ideal::new(&r, vec![v(&r, 0).add(&yz), yz.clone()]);
        let k = Ideal::new(&r, vec![v(&r, 0), v(&r, 2)]);
        assert!(i.ideal_equal(&i).unwrap());
        assert!(i.ideal_equal(&j).unwrap());
        assert!(!i.ideal_equal(&k).unwrap());
    }

    #[test]
    fn elimination_edges() {
        let r = ring();
        let i = Ideal::new(&r, vec![v(&r, 0), v(&r, 1)]);
        // k = 0 is the identity
        assert!(i.eliminate(0).ideal_equal(&i).unwrap());
        // eliminating everything from a proper homogeneous ideal leaves zero
        let all = i.eliminate(4);
        assert!(all.generators().is_empty());
    }

    #[test]
    fn eliminate_matches_double_inclusion_intersection() {
        // manual elimination of t from (t*x, (1-t)*y) in k[t,x,y,z,w],
        // cross-checked against the intersect() result for (x) ∩ (y)
        let r = ring();
        let i = Ideal::new(&r, vec![v(&r, 0)]);
        let j = Ideal::new(&r, vec![v(&r, 1)]);
        let meet = i.intersect(&j).unwrap();
        let xy = v(&r, 0).mul(&v(&r, 1));
        assert!(meet.contains(&xy));
        assert!(i.contains(meet.generators().first().unwrap()));
        assert!(j.contains(meet.generators().first().unwrap()));
        assert!(meet.ideal_equal(&Ideal::new(&r, vec![xy])).unwrap());
    }

    #[test]
    fn reduced_basis_is_stable_under_permutation() {
        let r = ring();
        let q = segre(&r);
        let a = v(&r, 0).mul(&v(&r, 1));
        let b = v(&r, 2).mul(&v(&r, 3)).add(&v(&r, 1).mul(&v(&r, 1)));
        let g1 = buchberger(&[q.clone(), a.clone(), b.clone()]);
        let g2 = buchberger(&[b, q, a]);
        assert_eq!(g1, g2);
        assert!(satisfies_buchberger_criterion(&g1));
    }

    #[test]
    fn hilbert_function_staircase_matches_linalg() {
        let r = ring();
        let i = Ideal::new(&r, vec![segre(&r), v(&r, 0).mul(&v(&r, 1))]);
        for d in 0..8 {
            assert_eq!(i.hilbert_function(d), hilbert_function_linalg(&r, i.generators(), d));
        }
    }

    #[test]
    fn hilbert_additivity_small() {
        // HF(S/(I∩J)) picks up HF(S/I) + HF(S/J) − HF(S/(I+J))
        let r = ring();
        let i = Ideal::new(&r, vec![v(&r, 0), v(&r, 1)]);
        let j = Ideal::new(&r, vec![v(&r, 2), v(&r, 3)]);
        let meet = i.intersect(&j).unwrap();
        let sum = i.sum(&j).unwrap();
        for d in 0..8 {
            assert_eq!(
                meet.hilbert_function(d) + sum.hilbert_function(d),
                i.hilbert_function(d) + j.hilbert_function(d)
            );
        }
    }
}
