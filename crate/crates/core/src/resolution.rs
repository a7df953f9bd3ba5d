//! Minimal graded free resolutions by iterated syzygy computation.
//!
//! Syzygies of a map between graded free modules are computed with a module
//! Gröbner basis: the generators (g_j, e_j) of the graph submodule of
//! F_target ⊕ F_source are completed to a basis under a block order in which
//! every term in the target block exceeds every term in the source block;
//! basis elements supported entirely on the source block generate the kernel.
//! The resulting (generally non-minimal) resolution of S/I is then minimized
//! by cancelling constant entries with row/column operations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::{monomials_of_degree, Ideal};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, RingRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }
}

/// A degree-zero map of graded free modules, stored as a matrix of
/// homogeneous polynomials: entry (i, j) has degree source.twist_j −
/// target.twist_i or is zero.
#[derive(Debug, Clone)]
pub struct GradedMap {
    ring: RingRef,
    source: GradedFreeModule,
    target: GradedFreeModule,
    /// entries[i][j]: row i (target), column j (source)
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    pub fn new(
        ring: &RingRef,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch("graded map shape".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let want = source.twists[j] - target.twists[i];
                if !e.is_homogeneous() || e.degree().map(i64::from) != Some(want) {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({i},{j}) is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(GradedMap { ring: ring.clone(), source, target, entries })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Composition with a following map: self ∘ next (next maps into
    /// self's source). Used to assert the complex property.
    pub fn composes_to_zero_with(&self, next: &GradedMap) -> bool {
        if next.target.rank() != self.source.rank() {
            return false;
        }
        for i in 0..self.target.rank() {
            for j in 0..next.source.rank() {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.source.rank() {
                    acc = acc.add(&self.entries[i][k].mul(&next.entries[k][j]));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// A map is part of a minimal resolution iff no entry is a nonzero
    /// constant.
    pub fn has_unit_entry(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .any(|e| !e.is_zero() && e.degree() == Some(0))
    }

    fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.target.rank()).map(|i| self.entries[i][j].clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// module Gröbner engine
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct ModTerm {
    mon: Monomial,
    comp: usize,
    coeff: u64,
}

/// Element of a free module, terms sorted strictly descending under the
/// block order with `split` separating the dominant block.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ModVec {
    terms: Vec<ModTerm>,
}

#[derive(Clone, Copy)]
struct ModOrder {
    split: usize,
    ord: crate::monomial::TermOrder,
}

impl ModOrder {
    fn cmp(&self, a: &ModTerm, b: &ModTerm) -> std::cmp::Ordering {
        let block = |t: &ModTerm| usize::from(t.comp >= self.split);
        block(b)
            .cmp(&block(a)) // block 0 terms are the largest
            .then_with(|| self.ord.cmp(&a.mon, &b.mon))
            .then_with(|| b.comp.cmp(&a.comp))
    }
}

impl ModVec {
    fn normalize(ring: &RingRef, ord: ModOrder, mut terms: Vec<ModTerm>) -> ModVec {
        let f = ring.field();
        terms.sort_by(|a, b| ord.cmp(b, a));
        let mut merged: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.mon == t.mon && last.comp == t.comp => {
                    last.coeff = f.add(last.coeff, t.coeff)
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0);
        ModVec { terms: merged }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &ModTerm {
        &self.terms[0]
    }

    /// self − c · m · other, by merging the two sorted term lists (module
    /// orders are preserved under multiplication by a monomial)
    fn sub_scaled(&self, ring: &RingRef, ord: ModOrder, c: u64, m: &Monomial, other: &ModVec) -> ModVec {
        let f = ring.field();
        let mut out: Vec<ModTerm> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_self = match (self.terms.get(i), other.terms.get(j)) {
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => {
                    let bt = ModTerm { mon: b.mon.mul(m), comp: b.comp, coeff: b.coeff };
                    match ord.cmp(a, &bt) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => {
                            out.push(ModTerm {
                                mon: bt.mon,
                                comp: bt.comp,
                                coeff: f.neg(f.mul(c, bt.coeff)),
                            });
                            j += 1;
                            continue;
                        }
                        std::cmp::Ordering::Equal => {
                            let coeff = f.sub(a.coeff, f.mul(c, b.coeff));
                            if coeff != 0 {
                                out.push(ModTerm { mon: bt.mon, comp: bt.comp, coeff });
                            }
                            i += 1;
                            j += 1;
                            continue;
                        }
                    }
                }
                (None, None) => unreachable!(),
            };
            if take_self {
                out.push(self.terms[i].clone());
                i += 1;
            } else {
                let b = &other.terms[j];
                out.push(ModTerm {
                    mon: b.mon.mul(m),
                    comp: b.comp,
                    coeff: f.neg(f.mul(c, b.coeff)),
                });
                j += 1;
            }
        }
        ModVec { terms: out }
    }
}

/// Reduces only the leading term; enough for the Buchberger loop, where
/// tails never affect the computed leads and full reduction is wasted work.
fn mod_top_reduce(ring: &RingRef, ord: ModOrder, f: &ModVec, basis: &[ModVec]) -> ModVec {
    let field = ring.field();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let lt = work.lead().clone();
        for g in basis {
            let gl = g.lead();
            if gl.comp == lt.comp && gl.mon.divides(&lt.mon) {
                let c = field.div(lt.coeff, gl.coeff).expect("nonzero");
                let m = gl.mon.div_into(&lt.mon);
                work = work.sub_scaled(ring, ord, c, &m, g);
                continue 'outer;
            }
        }
        break;
    }
    work
}

#[allow(dead_code)]
fn mod_reduce(ring: &RingRef, ord: ModOrder, f: &ModVec, basis: &[ModVec]) -> ModVec {
    let field = ring.field();
    let mut work = f.clone();
    let mut out: Vec<ModTerm> = Vec::new();
    'outer: while !work.is_zero() {
        let lt = work.lead().clone();
        for g in basis {
            let gl = g.lead();
            if gl.comp == lt.comp && gl.mon.divides(&lt.mon) {
                let c = field.div(lt.coeff, gl.coeff).expect("nonzero");
                let m = gl.mon.div_into(&lt.mon);
                work = work.sub_scaled(ring, ord, c, &m, g);
                continue 'outer;
            }
        }
        out.push(lt);
        work = ModVec { terms: work.terms[1..].to_vec() };
    }
    ModVec { terms: out }
}

fn mod_buchberger(ring: &RingRef, ord: ModOrder, gens: Vec<ModVec>) -> Vec<ModVec> {
    let field = ring.field();
    let mut basis: Vec<ModVec> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    // Pairs are useful only when both leads sit in the same component of the
    // dominant block. Elements led by the second block are pure kernel
    // vectors; S-pairs among them would only refine the kernel part into a
    // Gröbner basis, which the callers never rely on (they reduce against
    // the dominant block and re-minimize the kernel generators afterwards).
    let eligible = |a: &ModVec, b: &ModVec| {
        a.lead().comp == b.lead().comp && a.lead().comp < ord.split
    };
    let mut pending: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if eligible(&basis[i], &basis[j]) {
                pending.insert((i, j));
            }
        }
    }
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    while !pending.is_empty() {
        // normal selection: minimal lcm degree, ties by the term order
        let &(i, j) = pending
            .iter()
            .min_by(|&&(i1, j1), &&(i2, j2)| {
                let l1 = basis[i1].lead().mon.lcm(&basis[j1].lead().mon);
                let l2 = basis[i2].lead().mon.lcm(&basis[j2].lead().mon);
                l1.degree()
                    .cmp(&l2.degree())
                    .then_with(|| ord.ord.cmp(&l1, &l2))
                    .then_with(|| (i1, j1).cmp(&(i2, j2)))
            })
            .expect("nonempty");
        pending.remove(&(i, j));

        let lcm = basis[i].lead().mon.lcm(&basis[j].lead().mon);
        // chain criterion (valid componentwise): some k with the same lead
        // component, lead monomial dividing the lcm, and both flanking pairs
        // already handled
        let comp = basis[i].lead().comp;
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().comp == comp
                && basis[k].lead().mon.divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let (fi, fj) = (&basis[i], &basis[j]);
        let (li, lj) = (fi.lead(), fj.lead());
        let a = ModVec { terms: Vec::new() }
            .sub_scaled(ring, ord, field.neg(field.inv(li.coeff).unwrap()), &li.mon.div_into(&lcm), fi);
        let s = a.sub_scaled(ring, ord, field.inv(lj.coeff).unwrap(), &lj.mon.div_into(&lcm), fj);
        let r = mod_top_reduce(ring, ord, &s, &basis);
        if !r.is_zero() {
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                if eligible(&basis[k], &basis[new]) {
                    pending.insert((k, new));
                }
            }
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// syzygies and resolutions
// ---------------------------------------------------------------------------

/// Generators of ker(φ), returned as a graded map into φ's source.
pub fn syzygies(phi: &GradedMap) -> GradedMap {
    let ring = phi.ring.clone();
    let r0 = phi.target.rank();
    let s = phi.source.rank();
    let ord = ModOrder { split: r0, ord: ring.order() };

    let mut gens = Vec::with_capacity(s);
    for j in 0..s {
        let mut terms = Vec::new();
        for (i, e) in phi.column(j).into_iter().enumerate() {
            for (m, c) in e.terms() {
                terms.push(ModTerm { mon: m.clone(), comp: i, coeff: *c });
            }
        }
        terms.push(ModTerm { mon: Monomial::one(ring.nvars()), comp: r0 + j, coeff: 1 });
        gens.push(ModVec::normalize(&ring, ord, terms));
    }

    let gb = mod_buchberger(&ring, ord, gens);
    let mut columns: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    for g in &gb {
        if g.is_zero() || g.lead().comp < r0 {
            continue;
        }
        let mut col = vec![Polynomial::zero(&ring); s];
        let mut degree: Option<i64> = None;
        for t in &g.terms {
            debug_assert!(t.comp >= r0, "lead in source block forces all terms there");
            let j = t.comp - r0;
            col[j] = col[j].add(&Polynomial::monomial(&ring, t.mon.clone(), t.coeff));
            let d = i64::from(t.mon.degree()) + phi.source.twists[j];
            debug_assert!(degree.is_none() || degree == Some(d), "syzygy must be homogeneous");
            degree = Some(d);
        }
        columns.push((degree.expect("nonzero syzygy"), col));
    }
    // deterministic column order: by degree, then by the printed form
    columns.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            let ka: Vec<String> = a.1.iter().map(|p| p.to_string()).collect();
            let kb: Vec<String> = b.1.iter().map(|p| p.to_string()).collect();
            ka.cmp(&kb)
        })
    });

    let twists: Vec<i64> = columns.iter().map(|(d, _)| *d).collect();
    let mut entries = vec![Vec::with_capacity(columns.len()); s];
    for (_, col) in &columns {
        for (j, e) in col.iter().enumerate() {
            entries[j].push(e.clone());
        }
    }
    GradedMap::new(&ring, GradedFreeModule::new(twists), phi.source.clone(), entries)
        .expect("syzygy map is graded by construction")
}

/// Graded Betti numbers β_{i,j} of a minimal resolution of S/I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
    nvars: usize,
}

impl BettiTable {
    pub fn from_levels(levels: &[Vec<i64>], nvars: usize) -> Self {
        let mut entries = BTreeMap::new();
        for (i, twists) in levels.iter().enumerate() {
            for &j in twists {
                *entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        BettiTable { entries, nvars }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Largest homological index with a nonzero entry; pd(S/I) for the
    /// table of a minimal resolution of S/I.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Castelnuovo–Mumford regularity. With `of_ideal`, the table is read as
    /// the resolution of S/I but the regularity reported is that of the
    /// ideal I, i.e. reg(S/I) + 1; this equals the sheaf regularity because
    /// the ideals here are saturated.
    pub fn regularity(&self, of_ideal: bool) -> Result<i64> {
        if self.entries.is_empty() {
            return Err(Error::DegenerateInput("empty Betti table".into()));
        }
        if of_ideal {
            self.entries
                .keys()
                .filter(|&&(i, _)| i >= 1)
                .map(|&(i, j)| j - i as i64 + 1)
                .max()
                .ok_or_else(|| Error::DegenerateInput("table has no ideal part".into()))
        } else {
            Ok(self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap())
        }
    }

    /// Degrees of the minimal generators of the ideal (β_{1,j} of S/I),
    /// with multiplicity, ascending.
    pub fn min_generator_degrees(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (&(i, j), &count) in &self.entries {
            if i == 1 {
                out.extend(std::iter::repeat(j).take(count));
            }
        }
        out
    }

    /// Hilbert function of the resolved module predicted by the alternating
    /// sum over the table.
    pub fn hilbert_value(&self, d: i64) -> i64 {
        let nv = self.nvars as i64;
        let mut acc = 0i64;
        for (&(i, j), &count) in &self.entries {
            let m = d - j;
            let mons = if m < 0 { 0 } else { binomial(m + nv - 1, nv - 1) };
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += sign * (count as i64) * mons;
        }
        acc
    }

    /// The standard Betti layout: columns are j − i, rows are i, empty
    /// cells for zero.
    pub fn to_csv(&self) -> String {
        if self.entries.is_empty() {
            return String::from("i\\j-i\n");
        }
        let min_off = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap();
        let max_off = self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap();
        let pd = self.projective_dimension();
        let mut out = String::from("i\\j-i");
        for off in min_off..=max_off {
            out.push_str(&format!(",{off}"));
        }
        out.push('\n');
        for i in 0..=pd {
            out.push_str(&i.to_string());
            for off in min_off..=max_off {
                let v = self.get(i, off + i as i64);
                out.push(',');
                if v != 0 {
                    out.push_str(&v.to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc = 1i64;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Minimal free resolution of S/I, with the Betti table read off the
/// twists. The returned maps are φ_1: F_1 → F_0 = S up to φ_pd.
pub fn minimal_free_resolution(ideal: &Ideal) -> Result<(Vec<GradedMap>, BettiTable)> {
    let ring = ideal.ring().clone();
    let gb = ideal.groebner_basis().to_vec();
    if gb.is_empty() {
        return Ok((Vec::new(), BettiTable::from_levels(&[vec![0]], ring.nvars())));
    }
    for g in &gb {
        if !g.is_homogeneous() {
            return Err(Error::DegenerateInput("resolution requires a homogeneous ideal".into()));
        }
    }
    let twists1: Vec<i64> = gb.iter().map(|g| i64::from(g.degree().unwrap())).collect();
    let phi1 = GradedMap::new(
        &ring,
        GradedFreeModule::new(twists1),
        GradedFreeModule::new(vec![0]),
        vec![gb],
    )?;
    let mut maps = vec![phi1];
    let cap = ring.nvars() + 4;
    // minimize after every step: the syzygy module GB is far from a minimal
    // generating set, and carrying the excess into the next level blows up
    loop {
        let next = prune_columns(&syzygies(maps.last().unwrap()));
        if next.source.rank() == 0 {
            break;
        }
        let len_before = maps.len();
        maps.push(next);
        minimize(&mut maps);
        if maps.len() <= len_before {
            break;
        }
        if maps.len() > cap {
            return Err(Error::ResolutionTooLong(cap));
        }
    }
    let mut levels = vec![vec![0i64]];
    levels.extend(maps.iter().map(|m| m.source.twists.clone()));
    Ok((maps, BettiTable::from_levels(&levels, ring.nvars())))
}

/// Row space maintained in reduced echelon form; `insert` reports whether
/// the row enlarged the space.
struct Span {
    field: crate::field::PrimeField,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(field: crate::field::PrimeField, width: usize) -> Self {
        Span { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    fn insert(&mut self, mut row: Vec<u64>) -> bool {
        for (r, &pv) in self.rows.iter().zip(&self.pivots) {
            let c = row[pv];
            if c != 0 {
                for x in 0..self.width {
                    row[x] = self.field.sub(row[x], self.field.mul(c, r[x]));
                }
            }
        }
        let Some(p) = row.iter().position(|&x| x != 0) else { return false };
        let inv = self.field.inv(row[p]).expect("nonzero pivot");
        for x in row.iter_mut() {
            *x = self.field.mul(inv, *x);
        }
        for r in &mut self.rows {
            let c = r[p];
            if c != 0 {
                for x in 0..self.width {
                    r[x] = self.field.sub(r[x], self.field.mul(c, row[x]));
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }
}

/// Keeps only the columns that minimally generate Im(φ): working degree by
/// degree, a column of degree d is redundant iff it lies in the span of the
/// degree-d monomial multiples of the columns already kept. The syzygy
/// Gröbner basis is far from minimal, and carrying redundant generators to
/// the next level makes the resolution blow up.
fn prune_columns(phi: &GradedMap) -> GradedMap {
    let field = phi.ring.field();
    let nvars = phi.ring.nvars();
    let mut order: Vec<usize> = (0..phi.source.rank()).collect();
    order.sort_by_key(|&j| phi.source.twists[j]);
    let mut kept: Vec<usize> = Vec::new();
    let mut g = 0;
    while g < order.len() {
        let d = phi.source.twists[order[g]];
        // coordinate layout of the degree-d graded piece of the target
        let mut offsets = Vec::with_capacity(phi.target.rank());
        let mut mon_index: Vec<std::collections::HashMap<Monomial, usize>> = Vec::new();
        let mut width = 0usize;
        for &t in &phi.target.twists {
            offsets.push(width);
            let mut map = std::collections::HashMap::new();
            if d >= t {
                for (k, m) in monomials_of_degree(nvars, (d - t) as u32).into_iter().enumerate() {
                    map.insert(m, k);
                }
            }
            width += map.len();
            mon_index.push(map);
        }
        let flatten = |col: &[Polynomial]| -> Vec<u64> {
            let mut row = vec![0u64; width];
            for (i, e) in col.iter().enumerate() {
                for (m, c) in e.terms() {
                    row[offsets[i] + mon_index[i][m]] = *c;
                }
            }
            row
        };
        let mut span = Span::new(field, width);
        for &k in &kept {
            let col = phi.column(k);
            let extra = (d - phi.source.twists[k]) as u32;
            for m in monomials_of_degree(nvars, extra) {
                let shifted: Vec<Polynomial> = col.iter().map(|e| e.mul_term(&m, 1)).collect();
                span.insert(flatten(&shifted));
            }
        }
        while g < order.len() && phi.source.twists[order[g]] == d {
            let j = order[g];
            if span.insert(flatten(&phi.column(j))) {
                kept.push(j);
            }
            g += 1;
        }
    }
    kept.sort_unstable();
    let entries = phi
        .entries
        .iter()
        .map(|row| kept.iter().map(|&j| row[j].clone()).collect())
        .collect();
    GradedMap {
        ring: phi.ring.clone(),
        source: GradedFreeModule::new(kept.iter().map(|&j| phi.source.twists[j]).collect()),
        target: phi.target.clone(),
        entries,
    }
}

/// Cancels constant entries until every map is minimal.
fn minimize(maps: &mut Vec<GradedMap>) {
    loop {
        let found = maps.iter().enumerate().find_map(|(k, m)| {
            m.entries.iter().enumerate().find_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .find(|(_, e)| !e.is_zero() && e.degree() == Some(0))
                    .map(|(j, _)| (k, i, j))
            })
        });
        let Some((k, i, j)) = found else { break };
        cancel(maps, k, i, j);
        while maps.last().is_some_and(|m| m.source.rank() == 0) {
            maps.pop();
        }
    }
}

/// Removes source generator j and target generator i of maps[k] around the
/// constant entry (i, j), by a change of bases.
fn cancel(maps: &mut Vec<GradedMap>, k: usize, i: usize, j: usize) {
    let ring = maps[k].ring.clone();
    let field = ring.field();
    let c = maps[k].entries[i][j].terms()[0].1;
    let c_inv = field.inv(c).expect("unit entry");

    // alphas scale column j into the other columns (source basis change)
    let alphas: Vec<Polynomial> =
        (0..maps[k].source.rank()).map(|jj| maps[k].entries[i][jj].scale(c_inv)).collect();
    // betas scale row i into the other rows (target basis change)
    let betas: Vec<Polynomial> =
        (0..maps[k].target.rank()).map(|ii| maps[k].entries[ii][j].scale(c_inv)).collect();

    // column operations on maps[k]: col_{j'} -= alpha_{j'} * col_j
    for jj in 0..maps[k].source.rank() {
        if jj == j || alphas[jj].is_zero() {
            continue;
        }
        for r in 0..maps[k].target.rank() {
            let delta = alphas[jj].mul(&maps[k].entries[r][j]);
            maps[k].entries[r][jj] = maps[k].entries[r][jj].sub(&delta);
        }
    }
    // matching row update on the next map: row_j += Σ alpha_{j'} row_{j'}
    if k + 1 < maps.len() {
        for jj in 0..alphas.len() {
            if jj == j || alphas[jj].is_zero() {
                continue;
            }
            for col in 0..maps[k + 1].source.rank() {
                let delta = alphas[jj].mul(&maps[k + 1].entries[jj][col]);
                maps[k + 1].entries[j][col] = maps[k + 1].entries[j][col].add(&delta);
            }
        }
    }
    // row operations on maps[k]: row_{i'} -= beta_{i'} * row_i
    for ii in 0..maps[k].target.rank() {
        if ii == i || betas[ii].is_zero() {
            continue;
        }
        for col in 0..maps[k].source.rank() {
            let delta = betas[ii].mul(&maps[k].entries[i][col]);
            maps[k].entries[ii][col] = maps[k].entries[ii][col].sub(&delta);
        }
    }
    // matching column update on the previous map: col_i += Σ beta_{i'} col_{i'}
    if k > 0 {
        for ii in 0..betas.len() {
            if ii == i || betas[ii].is_zero() {
                continue;
            }
            for r in 0..maps[k - 1].target.rank() {
                let delta = betas[ii].mul(&maps[k - 1].entries[r][ii]);
                maps[k - 1].entries[r][i] = maps[k - 1].entries[r][i].add(&delta);
            }
        }
    }

    // drop row i and column j of maps[k], and the mirrored generator slots
    maps[k].entries.remove(i);
    for row in &mut maps[k].entries {
        row.remove(j);
    }
    maps[k].source.twists.remove(j);
    maps[k].target.twists.remove(i);
    if k + 1 < maps.len() {
        maps[k + 1].entries.remove(j);
        maps[k + 1].target.twists.remove(j);
    }
    if k > 0 {
        for row in &mut maps[k - 1].entries {
            row.remove(i);
        }
        maps[k - 1].source.twists.remove(i);
    }
}

/// ACM test by the Auslander–Buchsbaum criterion: pd(S/I) equals the
/// codimension.
pub fn is_acm(ideal: &Ideal, codim: usize) -> Result<bool> {
    let (_, betti) = minimal_free_resolution(ideal)?;
    Ok(betti.projective_dimension() == codim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::TermOrder;
    use crate::poly::Ring;

    fn ring() -> RingRef {
        Ring::projective(PrimeField::new(32003).unwrap(), 3, TermOrder::GrevLex)
    }

    fn v(r: &RingRef, i: usize) -> Polynomial {
        Polynomial::variable(r, i)
    }

    fn map_from_gens(r: &RingRef, gens: Vec<Polynomial>) -> GradedMap {
        let twists = gens.iter().map(|g| i64::from(g.degree().unwrap())).collect();
        GradedMap::new(
            r,
            GradedFreeModule::new(twists),
            GradedFreeModule::new(vec![0]),
            vec![gens],
        )
        .unwrap()
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring();
        let phi = map_from_gens(&r, vec![v(&r, 0), v(&r, 1)]);
        let syz = syzygies(&phi);
        assert_eq!(syz.source.rank(), 1);
        assert_eq!(syz.source.twists(), &[2]);
        assert!(phi.composes_to_zero_with(&syz));
        // kernel generator is ±(y, −x)
        let col: Vec<&Polynomial> = vec![syz.entry(0, 0), syz.entry(1, 0)];
        assert!(!col[0].is_zero() && !col[1].is_zero());
        assert_eq!(col[0].monic(), v(&r, 1));
        assert_eq!(col[1].monic(), v(&r, 0));
    }

    #[test]
    fn single_nonzerodivisor_has_zero_kernel() {
        let r = ring();
        let q = v(&r, 0).mul(&v(&r, 3)).sub(&v(&r, 1).mul(&v(&r, 2)));
        let syz = syzygies(&map_from_gens(&r, vec![q]));
        assert_eq!(syz.source.rank(), 0);
    }

    #[test]
    fn regular_sequence_x_yz_syzygy_in_degree_three() {
        let r = ring();
        let yz = v(&r, 1).mul(&v(&r, 2));
        let syz = syzygies(&map_from_gens(&r, vec![v(&r, 0), yz]));
        assert_eq!(syz.source.rank(), 1);
        assert_eq!(syz.source.twists(), &[3]);
    }

    #[test]
    fn koszul_resolution_of_k11_ideal() {
        let r = ring();
        let ideal = Ideal::new(&r, vec![v(&r, 0), v(&r, 1).mul(&v(&r, 2))]);
        let (maps, betti) = minimal_free_resolution(&ideal).unwrap();
        assert_eq!(betti.get(0, 0), 1);
        assert_eq!(betti.get(1, 1), 1);
        assert_eq!(betti.get(1, 2), 1);
        assert_eq!(betti.get(2, 3), 1);
        assert_eq!(betti.entries().values().sum::<usize>(), 4);
        assert_eq!(betti.regularity(true).unwrap(), 2);
        assert_eq!(betti.projective_dimension(), 2);
        assert_eq!(betti.min_generator_degrees(), vec![1, 2]);
        for w in maps.windows(2) {
            assert!(w[0].composes_to_zero_with(&w[1]));
        }
        assert!(maps.iter().all(|m| !m.has_unit_entry()));
    }

    #[test]
    fn betti_alternating_sum_matches_hilbert_function() {
        let r = ring();
        let q = v(&r, 0).mul(&v(&r, 3)).sub(&v(&r, 1).mul(&v(&r, 2)));
        let cubes = v(&r, 0).mul(&v(&r, 0)).mul(&v(&r, 0));
        let ideal = Ideal::new(&r, vec![q, cubes]);
        let (_, betti) = minimal_free_resolution(&ideal).unwrap();
        for d in 0..10i64 {
            assert_eq!(betti.hilbert_value(d) as usize, ideal.hilbert_function(d as u32));
        }
    }

    #[test]
    fn complete_intersection_2_3_is_koszul() {
        // type (2,3) complete intersection: quadric and a cubic
        let r = ring();
        let q = v(&r, 0).mul(&v(&r, 3)).sub(&v(&r, 1).mul(&v(&r, 2)));
        let c = v(&r, 0).mul(&v(&r, 0)).mul(&v(&r, 0));
        let ideal = Ideal::new(&r, vec![q, c]);
        let (_, betti) = minimal_free_resolution(&ideal).unwrap();
        assert_eq!(betti.get(1, 2), 1);
        assert_eq!(betti.get(1, 3), 1);
        assert_eq!(betti.get(2, 5), 1);
        assert_eq!(betti.projective_dimension(), 2);
        assert!(is_acm(&ideal, 2).unwrap());
    }

    #[test]
    fn csv_layout() {
        let r = ring();
        let ideal = Ideal::new(&r, vec![v(&r, 0), v(&r, 1).mul(&v(&r, 2))]);
        let (_, betti) = minimal_free_resolution(&ideal).unwrap();
        let csv = betti.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "i\\j-i,0,1");
        assert_eq!(lines[1], "0,1,");
        assert_eq!(lines[2], "1,1,1");
        assert_eq!(lines[3], "2,,1");
    }
}
