//! Constructors and verifiers for arrangements of (n−2)-planes: bipartite
//! line configurations in the two rulings of the Segre quadric xw − yz = 0,
//! cones into higher-dimensional spaces, incidence graphs, common
//! intersections, quadric fitting, and ruling splits.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::Ideal;
use crate::matrix::DenseMatrix;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Polynomial, Ring, RingRef};

/// A linear subspace of P^n, cut out by the independent linear forms in the
/// rows of `forms` (coefficient vectors of length n+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    forms: DenseMatrix,
}

impl LinearSubspace {
    pub fn new(forms: DenseMatrix) -> Result<Self> {
        if forms.rank() != forms.nrows() {
            return Err(Error::InvalidArrangement("dependent defining forms".into()));
        }
        Ok(LinearSubspace { forms })
    }

    pub fn forms(&self) -> &DenseMatrix {
        &self.forms
    }

    /// Projective dimension: n − (number of forms).
    pub fn dim(&self) -> i64 {
        (self.forms.ncols() as i64 - 1) - self.forms.nrows() as i64
    }

    /// The linear prime ideal of the subspace in the given coordinate ring.
    pub fn ideal(&self, ring: &RingRef) -> Ideal {
        let gens = self
            .forms
            .rows()
            .map(|row| Polynomial::linear_form(ring, row))
            .collect();
        Ideal::new(ring, gens)
    }

    /// Contains the projective point with the given coordinates.
    pub fn contains_point(&self, point: &[u64]) -> bool {
        self.forms
            .mul_vec(point)
            .map(|v| v.iter().all(|&x| x == 0))
            .unwrap_or(false)
    }
}

/// An arrangement of (n−2)-planes in P^n: every member is cut by exactly two
/// forms, no member contains another.
#[derive(Debug, Clone)]
pub struct Arrangement {
    field: PrimeField,
    n: usize,
    members: Vec<LinearSubspace>,
    bipartition: Option<[Vec<usize>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl IncidenceGraph {
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Bipartite type (a, b) with a ≤ b when the graph is a connected
    /// complete bipartite graph; None otherwise.
    pub fn complete_bipartite_type(&self) -> Option<(usize, usize)> {
        if self.vertices == 0 || self.edges.is_empty() {
            return None;
        }
        let mut color = vec![None::<bool>; self.vertices];
        let mut queue = std::collections::VecDeque::from([0usize]);
        color[0] = Some(false);
        let mut seen = 1;
        while let Some(v) = queue.pop_front() {
            for u in 0..self.vertices {
                if u != v && self.has_edge(u, v) {
                    match color[u] {
                        None => {
                            color[u] = Some(!color[v].unwrap());
                            seen += 1;
                            queue.push_back(u);
                        }
                        Some(c) if c == color[v].unwrap() => return None, // odd cycle
                        _ => {}
                    }
                }
            }
        }
        if seen != self.vertices {
            return None; // disconnected
        }
        let part0: Vec<usize> = (0..self.vertices).filter(|&v| color[v] == Some(false)).collect();
        let part1: Vec<usize> = (0..self.vertices).filter(|&v| color[v] == Some(true)).collect();
        for &x in &part0 {
            for &y in &part1 {
                if !self.has_edge(x, y) {
                    return None;
                }
            }
        }
        let (a, b) = (part0.len(), part1.len());
        Some((a.min(b), a.max(b)))
    }
}

impl Arrangement {
    pub fn new(
        field: PrimeField,
        n: usize,
        members: Vec<LinearSubspace>,
        bipartition: Option<[Vec<usize>; 2]>,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArrangement("no members".into()));
        }
        for m in &members {
            if m.forms.ncols() != n + 1 {
                return Err(Error::InvalidArrangement("form length does not match ambient".into()));
            }
            if m.forms.nrows() != 2 || m.dim() != n as i64 - 2 {
                return Err(Error::InvalidArrangement(
                    "members must be (n-2)-planes cut by two forms".into(),
                ));
            }
        }
        // no inclusions: stacked forms of any pair have rank ≥ 3
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let rank = members[i].forms.stack(&members[j].forms)?.rank();
                if rank <= 2 {
                    return Err(Error::InvalidArrangement(format!(
                        "members {i} and {j} coincide or are included in one another"
                    )));
                }
            }
        }
        if let Some(parts) = &bipartition {
            let mut all: Vec<usize> = parts[0].iter().chain(&parts[1]).copied().collect();
            all.sort_unstable();
            if all != (0..members.len()).collect::<Vec<_>>() {
                return Err(Error::InvalidArrangement("bipartition does not label every member".into()));
            }
        }
        Ok(Arrangement { field, n, members, bipartition })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[LinearSubspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bipartition(&self) -> Option<&[Vec<usize>; 2]> {
        self.bipartition.as_ref()
    }

    /// The coordinate ring of the ambient P^n, grevlex.
    pub fn coordinate_ring(&self) -> RingRef {
        Ring::projective(self.field, self.n, TermOrder::GrevLex)
    }

    /// Edges record pairs meeting in dimension n−3 (stacked rank 3 instead
    /// of the expected 4).
    pub fn incidence_graph(&self) -> Result<IncidenceGraph> {
        let mut edges = BTreeSet::new();
        for i in 0..self.members.len() {
            for j in (i + 1)..self.members.len() {
                match self.members[i].forms.stack(&self.members[j].forms)?.rank() {
                    4 => {}
                    3 => {
                        edges.insert((i, j));
                    }
                    _ => {
                        return Err(Error::InvalidArrangement(format!(
                            "inclusion between members {i} and {j}"
                        )))
                    }
                }
            }
        }
        Ok(IncidenceGraph { vertices: self.members.len(), edges })
    }

    /// Dimension of the common intersection of all members; −1 means empty.
    pub fn common_intersection_dim(&self) -> i64 {
        let mut stacked = self.members[0].forms.clone();
        for m in &self.members[1..] {
            stacked = stacked.stack(&m.forms).expect("uniform ambient");
        }
        self.n as i64 - stacked.rank() as i64
    }

    /// Reinterprets the defining forms in m additional coordinates: every
    /// member becomes an (n+m−2)-plane in P^(n+m); the incidence graph is
    /// unchanged. m = 0 is the identity.
    pub fn cone(&self, m: usize) -> Arrangement {
        if m == 0 {
            return self.clone();
        }
        let members = self
            .members
            .iter()
            .map(|s| {
                let rows: Vec<Vec<u64>> = s
                    .forms
                    .rows()
                    .map(|r| {
                        let mut row = r.to_vec();
                        row.extend(std::iter::repeat(0).take(m));
                        row
                    })
                    .collect();
                LinearSubspace::new(DenseMatrix::from_rows(self.field, &rows).expect("uniform"))
                    .expect("rank preserved")
            })
            .collect();
        Arrangement {
            field: self.field,
            n: self.n + m,
            members,
            bipartition: self.bipartition.clone(),
        }
    }

    /// The saturated defining ideal: the intersection of the members'
    /// linear prime ideals.
    pub fn defining_ideal(&self) -> Result<Ideal> {
        let ring = self.coordinate_ring();
        let mut acc = self.members[0].ideal(&ring);
        for m in &self.members[1..] {
            acc = acc.intersect(&m.ideal(&ring))?;
        }
        Ok(acc)
    }

    /// Splits an on-quadric K_{a1,a2} into K_{b1,b2} ∪ K_{c1,c2} along the
    /// recorded rulings, with b_i + c_i = a_i.
    pub fn split_bipartite(
        &self,
        b1: usize,
        b2: usize,
        c1: usize,
        c2: usize,
    ) -> Result<(Arrangement, Arrangement)> {
        let parts = self
            .bipartition
            .as_ref()
            .ok_or_else(|| Error::InvalidArrangement("no bipartition labels".into()))?;
        if b1 + c1 != parts[0].len() || b2 + c2 != parts[1].len() || b1.min(b2) == 0 || c1.min(c2) == 0
        {
            return Err(Error::InvalidArrangement(format!(
                "split ({b1},{b2})+({c1},{c2}) inconsistent with type ({},{})",
                parts[0].len(),
                parts[1].len()
            )));
        }
        let take = |idx: &[usize]| -> Vec<LinearSubspace> {
            idx.iter().map(|&i| self.members[i].clone()).collect()
        };
        let b_members = [take(&parts[0][..b1]), take(&parts[1][..b2])].concat();
        let c_members = [take(&parts[0][b1..]), take(&parts[1][b2..])].concat();
        let b = Arrangement::new(
            self.field,
            self.n,
            b_members,
            Some([(0..b1).collect(), (b1..b1 + b2).collect()]),
        )?;
        let c = Arrangement::new(
            self.field,
            self.n,
            c_members,
            Some([(0..c1).collect(), (c1..c1 + c2).collect()]),
        )?;
        Ok((b, c))
    }

    pub fn to_document(&self) -> ArrangementDoc {
        ArrangementDoc {
            p: self.field.modulus(),
            n: self.n,
            members: self
                .members
                .iter()
                .map(|m| MemberDoc { forms: m.forms.rows().map(|r| r.to_vec()).collect() })
                .collect(),
            bipartition: self.bipartition.clone().map(|[a, b]| vec![a, b]),
        }
    }
}

/// Flat, language-neutral arrangement document; coefficients are integer
/// residues mod p.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementDoc {
    pub p: u64,
    pub n: usize,
    pub members: Vec<MemberDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemberDoc {
    pub forms: Vec<Vec<u64>>,
}

impl ArrangementDoc {
    pub fn into_arrangement(self) -> Result<Arrangement> {
        let field = PrimeField::new(self.p)?;
        let members = self
            .members
            .iter()
            .map(|m| LinearSubspace::new(DenseMatrix::from_rows(field, &m.forms)?))
            .collect::<Result<Vec<_>>>()?;
        let bipartition = match self.bipartition {
            None => None,
            Some(parts) if parts.len() == 2 => Some([parts[0].clone(), parts[1].clone()]),
            Some(_) => return Err(Error::InvalidDocument("bipartition must have two parts".into())),
        };
        Arrangement::new(field, self.n, members, bipartition)
    }
}

/// The Segre quadric xw − yz in the coordinate ring of P^3.
pub fn segre_quadric(ring: &RingRef) -> Polynomial {
    assert_eq!(ring.nvars(), 4);
    let v = |i| Polynomial::variable(ring, i);
    v(0).mul(&v(3)).sub(&v(1).mul(&v(2)))
}

/// A ruling parameter, the projective ratio [s : t].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub s: u64,
    pub t: u64,
}

impl Ratio {
    pub fn affine(s: u64) -> Self {
        Ratio { s, t: 1 }
    }

    pub fn infinity() -> Self {
        Ratio { s: 1, t: 0 }
    }

    fn same(&self, other: &Ratio, field: PrimeField) -> bool {
        field.sub(field.mul(self.s, other.t), field.mul(other.s, self.t)) == 0
    }
}

/// Builds the union of `a` lines in one ruling and `b` lines in the other
/// ruling of the Segre quadric in P^3. With `params = None` the ruling
/// parameters default to 0, 1, 2, …, which requires p > a + b.
pub fn build_bipartite_on_quadric(
    field: PrimeField,
    a: usize,
    b: usize,
    params: Option<(Vec<Ratio>, Vec<Ratio>)>,
) -> Result<Arrangement> {
    if a == 0 || b == 0 {
        return Err(Error::DegenerateInput("both rulings need at least one line".into()));
    }
    let (pa, pb) = match params {
        Some(p) => p,
        None => {
            if field.modulus() <= (a + b) as u64 {
                return Err(Error::DegenerateInput(format!(
                    "default parameters need p > a + b = {}",
                    a + b
                )));
            }
            (
                (0..a as u64).map(Ratio::affine).collect(),
                (0..b as u64).map(Ratio::affine).collect(),
            )
        }
    };
    if pa.len() != a || pb.len() != b {
        return Err(Error::DegenerateInput("parameter counts must match (a, b)".into()));
    }
    for ps in [&pa, &pb] {
        for r in ps {
            if r.s == 0 && r.t == 0 {
                return Err(Error::DegenerateInput("[0:0] is not a projective ratio".into()));
            }
        }
        for i in 0..ps.len() {
            for j in (i + 1)..ps.len() {
                if ps[i].same(&ps[j], field) {
                    return Err(Error::DegenerateInput(format!(
                        "repeated ruling parameter at positions {i}, {j}"
                    )));
                }
            }
        }
    }
    let mut members = Vec::with_capacity(a + b);
    for r in &pa {
        // V(t x − s z, t y − s w)
        let rows = vec![
            vec![r.t, 0, field.neg(r.s), 0],
            vec![0, r.t, 0, field.neg(r.s)],
        ];
        members.push(LinearSubspace::new(DenseMatrix::from_rows(field, &rows)?)?);
    }
    for r in &pb {
        // V(v x − u y, v z − u w) with [u : v] = [s : t]
        let rows = vec![
            vec![r.t, field.neg(r.s), 0, 0],
            vec![0, 0, r.t, field.neg(r.s)],
        ];
        members.push(LinearSubspace::new(DenseMatrix::from_rows(field, &rows)?)?);
    }
    Arrangement::new(
        field,
        3,
        members,
        Some([(0..a).collect(), (a..a + b).collect()]),
    )
}

/// A quadric surface in P^3, stored as a symmetric 4×4 matrix (char ≠ 2);
/// smooth iff the determinant is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    mat: DenseMatrix,
}

impl QuadraticForm {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.mat
    }

    pub fn is_smooth(&self) -> bool {
        self.mat.determinant().map(|d| d != 0).unwrap_or(false)
    }

    pub fn to_polynomial(&self, ring: &RingRef) -> Polynomial {
        assert_eq!(ring.nvars(), 4);
        let f = ring.field();
        let mut terms = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                let c = if i == j {
                    self.mat.get(i, i)
                } else {
                    f.add(self.mat.get(i, j), self.mat.get(j, i))
                };
                if c != 0 {
                    let mut e = vec![0u32; 4];
                    e[i] += 1;
                    e[j] += 1;
                    terms.push((Monomial::new(e), c));
                }
            }
        }
        Polynomial::from_terms(ring, terms)
    }

    pub fn vanishes_on(&self, line: &LinearSubspace) -> bool {
        let ring = Ring::projective(self.mat.field(), 3, TermOrder::GrevLex);
        line.ideal(&ring).contains(&self.to_polynomial(&ring))
    }
}

/// True when f = c·g for some nonzero scalar c.
pub fn proportional(f: &Polynomial, g: &Polynomial) -> bool {
    if f.is_zero() || g.is_zero() {
        return f.is_zero() && g.is_zero();
    }
    f.monic() == g.monic()
}

const QUADRIC_MONOMIALS: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// The unique smooth quadric through three pairwise skew lines, fitted by
/// the 9×10 linear system of three sample points per line (parameters 0, 1,
/// ∞ of each line's own parametrization).
pub fn quadric_through(field: PrimeField, lines: &[LinearSubspace; 3]) -> Result<QuadraticForm> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            let rank = lines[i].forms.stack(&lines[j].forms)?.rank();
            if rank != 4 {
                return Err(Error::DegenerateInput(format!(
                    "lines {i} and {j} are not skew"
                )));
            }
        }
    }
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(9);
    for line in lines {
        let basis = line.forms.nullspace();
        debug_assert_eq!(basis.len(), 2);
        let (p0, p1) = (&basis[0], &basis[1]);
        let mid: Vec<u64> = p0.iter().zip(p1).map(|(&x, &y)| field.add(x, y)).collect();
        for point in [p0.clone(), mid, p1.clone()] {
            rows.push(
                QUADRIC_MONOMIALS
                    .iter()
                    .map(|&(i, j)| field.mul(point[i], point[j]))
                    .collect(),
            );
        }
    }
    let system = DenseMatrix::from_rows(field, &rows)?;
    let kernel = system.nullspace();
    if kernel.len() != 1 {
        return Err(Error::DegenerateInput(format!(
            "quadric system has a {}-dimensional solution space, expected 1",
            kernel.len()
        )));
    }
    let coeffs = &kernel[0];
    let half = field.inv(2)?;
    let mut mat = DenseMatrix::zeros(field, 4, 4);
    for (c, &(i, j)) in coeffs.iter().zip(&QUADRIC_MONOMIALS) {
        if i == j {
            mat.set(i, i, *c);
        } else {
            let h = field.mul(*c, half);
            mat.set(i, j, h);
            mat.set(j, i, h);
        }
    }
    let q = QuadraticForm { mat };
    if !q.is_smooth() {
        return Err(Error::DegenerateInput("fitted quadric is singular".into()));
    }
    Ok(q)
}

/// Exploratory K_{1,b} star in P^3: a center line T plus b lines through
/// distinct points of T with seeded pseudo-random directions, pairwise skew
/// among themselves. Degenerate draws are rejected and resampled; no
/// regularity value is asserted for these arrangements.
pub fn build_generic_star(field: PrimeField, b: usize, seed: u64) -> Result<Arrangement> {
    if b < 3 {
        return Err(Error::DegenerateInput("star construction needs b ≥ 3".into()));
    }
    if field.modulus() <= b as u64 + 1 {
        return Err(Error::DegenerateInput("field too small for distinct star points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    // center line T = V(z, w), containing the points [s : 1 : 0 : 0]
    let t_line = LinearSubspace::new(DenseMatrix::from_rows(
        field,
        &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
    )?)?;

    'attempt: for _ in 0..200 {
        let mut members = vec![t_line.clone()];
        for i in 0..b {
            let through = vec![i as u64, 1, 0, 0];
            // a direction point off T
            let dir = vec![
                rng.gen_range(0..p),
                rng.gen_range(0..p),
                rng.gen_range(0..p),
                rng.gen_range(1..p),
            ];
            let span = DenseMatrix::from_rows(field, &[through, dir])?;
            let forms = span.nullspace();
            if forms.len() != 2 {
                continue 'attempt;
            }
            members.push(LinearSubspace::new(DenseMatrix::from_rows(field, &forms)?)?);
        }
        let arrangement = match Arrangement::new(
            field,
            3,
            members,
            Some([vec![0], (1..=b).collect()]),
        ) {
            Ok(a) => a,
            Err(_) => continue 'attempt,
        };
        let graph = match arrangement.incidence_graph() {
            Ok(g) => g,
            Err(_) => continue 'attempt,
        };
        if graph.complete_bipartite_type() == Some((1, b)) {
            return Ok(arrangement);
        }
    }
    Err(Error::DegenerateInput("could not sample a non-degenerate star".into()))
}

/// Convenience check used by the verifiers: solves the quadric-through-all
/// system for an arbitrary line set and reports whether a smooth quadric
/// contains them all.
pub fn lies_on_smooth_quadric(field: PrimeField, lines: &[LinearSubspace]) -> bool {
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for line in lines {
        let basis = line.forms.nullspace();
        if basis.len() != 2 {
            return false;
        }
        let (p0, p1) = (&basis[0], &basis[1]);
        let mid: Vec<u64> = p0.iter().zip(p1).map(|(&x, &y)| field.add(x, y)).collect();
        for point in [p0.clone(), mid, p1.clone()] {
            rows.push(
                QUADRIC_MONOMIALS
                    .iter()
                    .map(|&(i, j)| field.mul(point[i], point[j]))
                    .collect(),
            );
        }
    }
    let Ok(system) = DenseMatrix::from_rows(field, &rows) else {
        return false;
    };
    let kernel = system.nullspace();
    if kernel.is_empty() {
        return false;
    }
    // look for a smooth member of the solution pencil
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let mut combo = vec![0u64; 10];
        for v in &kernel {
            let c = rng.gen_range(0..field.modulus());
            for (acc, &x) in combo.iter_mut().zip(v) {
                *acc = field.add(*acc, field.mul(c, x));
            }
        }
        let half = match field.inv(2) {
            Ok(h) => h,
            Err(_) => return false,
        };
        let mut mat = DenseMatrix::zeros(field, 4, 4);
        for (c, &(i, j)) in combo.iter().zip(&QUADRIC_MONOMIALS) {
            if i == j {
                mat.set(i, i, *c);
            } else {
                let h = field.mul(*c, half);
                mat.set(i, j, h);
                mat.set(j, i, h);
            }
        }
        if (QuadraticForm { mat }).is_smooth() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn line(rows: &[Vec<u64>]) -> LinearSubspace {
        LinearSubspace::new(DenseMatrix::from_rows(f(), rows).unwrap()).unwrap()
    }

    #[test]
    fn skew_and_concurrent_lines() {
        let vxy = line(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let vzw = line(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        let vxz = line(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
        let skew = Arrangement::new(f(), 3, vec![vxy.clone(), vzw], None).unwrap();
        assert!(skew.incidence_graph().unwrap().edges().is_empty());
        let meet = Arrangement::new(f(), 3, vec![vxy, vxz], None).unwrap();
        assert!(meet.incidence_graph().unwrap().has_edge(0, 1));
    }

    #[test]
    fn inclusion_is_rejected() {
        let vxy = line(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert!(Arrangement::new(f(), 3, vec![vxy.clone(), vxy], None).is_err());
    }

    #[test]
    fn bipartite_type_detection() {
        // 4-cycle = K_{2,2}
        let c4 = IncidenceGraph {
            vertices: 4,
            edges: [(0, 1), (1, 2), (2, 3), (0, 3)].into_iter().collect(),
        };
        assert_eq!(c4.complete_bipartite_type(), Some((2, 2)));
        let triangle = IncidenceGraph {
            vertices: 3,
            edges: [(0, 1), (1, 2), (0, 2)].into_iter().collect(),
        };
        assert_eq!(triangle.complete_bipartite_type(), None);
        let star = IncidenceGraph {
            vertices: 6,
            edges: (1..6).map(|i| (0, i)).collect(),
        };
        assert_eq!(star.complete_bipartite_type(), Some((1, 5)));
    }

    #[test]
    fn on_quadric_build_is_k_ab() {
        let arr = build_bipartite_on_quadric(f(), 3, 5, None).unwrap();
        let graph = arr.incidence_graph().unwrap();
        assert_eq!(graph.complete_bipartite_type(), Some((3, 5)));
        // ruling incidence: same-ruling skew, cross-ruling meeting
        let parts = arr.bipartition().unwrap();
        for &i in &parts[0] {
            for &j in &parts[0] {
                assert!(i == j || !graph.has_edge(i, j));
            }
            for &j in &parts[1] {
                assert!(graph.has_edge(i, j));
            }
        }
    }

    #[test]
    fn k11_lines_meet_at_a_point() {
        let arr = build_bipartite_on_quadric(f(), 1, 1, None).unwrap();
        // parameters [0:1], [0:1] give V(x,y) and V(x,z), meeting at [0:0:0:1]
        assert!(arr.members()[0].contains_point(&[0, 0, 0, 1]));
        assert!(arr.members()[1].contains_point(&[0, 0, 0, 1]));
        assert_eq!(arr.common_intersection_dim(), 0);
    }

    #[test]
    fn every_ruling_line_lies_on_the_segre_quadric() {
        let arr = build_bipartite_on_quadric(f(), 2, 3, None).unwrap();
        let ring = arr.coordinate_ring();
        let q = segre_quadric(&ring);
        for member in arr.members() {
            assert!(member.ideal(&ring).contains(&q));
        }
    }

    #[test]
    fn repeated_ruling_parameter_is_rejected() {
        let params = (vec![Ratio::affine(1), Ratio::affine(1)], vec![Ratio::affine(0)]);
        assert!(build_bipartite_on_quadric(f(), 2, 1, Some(params)).is_err());
    }

    #[test]
    fn common_intersection_on_quadric_and_cone() {
        let arr = build_bipartite_on_quadric(f(), 2, 2, None).unwrap();
        assert_eq!(arr.common_intersection_dim(), -1); // empty: (n−4) with n = 3
        let cone = arr.cone(2); // into P^5
        assert_eq!(cone.common_intersection_dim(), 1);
        assert_eq!(
            cone.incidence_graph().unwrap().complete_bipartite_type(),
            Some((2, 2))
        );
    }

    #[test]
    fn cone_of_zero_is_identity() {
        let arr = build_bipartite_on_quadric(f(), 2, 2, None).unwrap();
        let same = arr.cone(0);
        assert_eq!(same.ambient_dim(), 3);
        assert_eq!(same.members().len(), 4);
    }

    #[test]
    fn quadric_through_recovers_segre() {
        let arr = build_bipartite_on_quadric(f(), 3, 3, None).unwrap();
        let lines: [LinearSubspace; 3] = [
            arr.members()[0].clone(),
            arr.members()[1].clone(),
            arr.members()[2].clone(),
        ];
        let q = quadric_through(f(), &lines).unwrap();
        let ring = arr.coordinate_ring();
        assert!(proportional(&q.to_polynomial(&ring), &segre_quadric(&ring)));
        // every second-ruling line lies on the fitted quadric
        for &j in &arr.bipartition().unwrap()[1] {
            assert!(q.vanishes_on(&arr.members()[j]));
        }
    }

    #[test]
    fn quadric_through_rejects_meeting_lines() {
        let vxy = line(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let vxz = line(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
        let vzw = line(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert!(quadric_through(f(), &[vxy, vxz, vzw]).is_err());
    }

    #[test]
    fn quadric_fit_independent_of_sample_points() {
        // re-fit after swapping the roles of the two basis points of each line
        let arr = build_bipartite_on_quadric(f(), 3, 4, None).unwrap();
        let ring = arr.coordinate_ring();
        let lines: [LinearSubspace; 3] = [
            arr.members()[0].clone(),
            arr.members()[1].clone(),
            arr.members()[2].clone(),
        ];
        let q1 = quadric_through(f(), &lines).unwrap().to_polynomial(&ring);
        // a projectively re-parametrized copy of the same lines
        let relabeled: [LinearSubspace; 3] = [lines[1].clone(), lines[2].clone(), lines[0].clone()];
        let q2 = quadric_through(f(), &relabeled).unwrap().to_polynomial(&ring);
        assert!(proportional(&q1, &q2));
    }

    #[test]
    fn defining_ideal_of_k11() {
        let arr = build_bipartite_on_quadric(f(), 1, 1, None).unwrap();
        let ring = arr.coordinate_ring();
        let ideal = arr.defining_ideal().unwrap();
        let v = |i| Polynomial::variable(&ring, i);
        let expected = Ideal::new(&ring, vec![v(0), v(1).mul(&v(2))]);
        assert!(ideal.ideal_equal(&expected).unwrap());
    }

    #[test]
    fn defining_ideal_contains_segre_quadric() {
        let arr = build_bipartite_on_quadric(f(), 2, 2, None).unwrap();
        let ring = arr.coordinate_ring();
        assert!(arr.defining_ideal().unwrap().contains(&segre_quadric(&ring)));
    }

    #[test]
    fn single_member_ideal_is_linear() {
        let vxy = line(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let arr = Arrangement::new(f(), 3, vec![vxy.clone()], None).unwrap();
        let ring = arr.coordinate_ring();
        assert!(arr.defining_ideal().unwrap().ideal_equal(&vxy.ideal(&ring)).unwrap());
    }

    #[test]
    fn generic_star_is_k1b_and_off_quadric() {
        let arr = build_generic_star(f(), 3, 42).unwrap();
        let graph = arr.incidence_graph().unwrap();
        assert_eq!(graph.complete_bipartite_type(), Some((1, 3)));
        // a K_{1,3} star always lies on a quadric (9 conditions in the
        // 10-dimensional space once the meeting points are shared) ...
        assert!(lies_on_smooth_quadric(f(), arr.members()));
        // ... while the generic K_{1,4} star does not: 11 conditions
        let wide = build_generic_star(f(), 4, 42).unwrap();
        assert!(!lies_on_smooth_quadric(f(), wide.members()));
        // determinism
        let again = build_generic_star(f(), 3, 42).unwrap();
        assert_eq!(arr.to_document().members[2].forms, again.to_document().members[2].forms);
    }

    #[test]
    fn split_k44_into_two_k22() {
        let arr = build_bipartite_on_quadric(f(), 4, 4, None).unwrap();
        let (b, c) = arr.split_bipartite(2, 2, 2, 2).unwrap();
        assert_eq!(b.incidence_graph().unwrap().complete_bipartite_type(), Some((2, 2)));
        assert_eq!(c.incidence_graph().unwrap().complete_bipartite_type(), Some((2, 2)));
        // invalid counts rejected
        assert!(arr.split_bipartite(4, 2, 0, 2).is_err());
        assert!(arr.split_bipartite(1, 2, 2, 2).is_err());
    }

    #[test]
    fn document_round_trip() {
        let arr = build_bipartite_on_quadric(f(), 2, 3, None).unwrap();
        let doc = arr.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: ArrangementDoc = serde_json::from_str(&json).unwrap();
        let arr2 = back.into_arrangement().unwrap();
        assert_eq!(
            arr.incidence_graph().unwrap(),
            arr2.incidence_graph().unwrap()
        );
        assert!(arr
            .defining_ideal()
            .unwrap()
            .ideal_equal(&arr2.defining_ideal().unwrap())
            .unwrap());
    }

    #[test]
    fn single_point_lemma_at_line_level() {
        // for a,b ≥ 2 in P^3: ⋂A empty, ⋂A_1 = ⋂A_2 = X∩Y for same-part X,Y
        let arr = build_bipartite_on_quadric(f(), 3, 3, None).unwrap();
        assert_eq!(arr.common_intersection_dim(), -1);
        let parts = arr.bipartition().unwrap().clone();
        for part in &parts {
            let mut stacked = arr.members()[part[0]].forms().clone();
            for &i in &part[1..] {
                stacked = stacked.stack(arr.members()[i].forms()).unwrap();
            }
            // all lines of one ruling are pairwise skew: the part meets nowhere
            assert_eq!(3 - stacked.rank() as i64, -1);
        }
    }
}
