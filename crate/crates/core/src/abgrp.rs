//! Exact integer linear algebra: Smith normal form, finitely presented
//! abelian groups, homomorphisms with kernels/images/cokernels/equalizers,
//! and homology of complexes of presented groups.
//!
//! A `PresentedAbGroup` with `k` generators and relation matrix `R`
//! (one relator per column) is the quotient `Z^k / col(R)`. Everything
//! downstream (nerve homology, Čech cohomology) reduces to this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbgrpError {
    #[error("homomorphism is ill-typed: {0}")]
    IllTypedHom(String),
    #[error("homomorphisms are not a parallel pair")]
    NotParallel,
    #[error("maps do not form a complex (d∘d ≠ 0)")]
    NotAComplex,
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(usize),
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn trace(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = &out.data[i] + &rhs.data[i];
        }
        out
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = &out.data[i] - &rhs.data[i];
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = -(v.clone());
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix of the first `r` rows.
    pub fn top_rows(&self, r: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(r, self.cols);
        for i in 0..r {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        let mut out = IntMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(self.get(i, j)).expect("entry exceeds i64"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with a divisibility chain `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct SnfState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols {
            let t = self.a.get(i, c).clone();
            self.a.set(i, c, self.a.get(j, c).clone());
            self.a.set(j, c, t);
        }
        for c in 0..self.u.cols {
            let t = self.u.get(i, c).clone();
            self.u.set(i, c, self.u.get(j, c).clone());
            self.u.set(j, c, t);
        }
        // u_inv picks up the inverse swap on columns
        for r in 0..self.u_inv.rows {
            let t = self.u_inv.get(r, i).clone();
            self.u_inv.set(r, i, self.u_inv.get(r, j).clone());
            self.u_inv.set(r, j, t);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows {
            let t = self.a.get(r, i).clone();
            self.a.set(r, i, self.a.get(r, j).clone());
            self.a.set(r, j, t);
        }
        for r in 0..self.v.rows {
            let t = self.v.get(r, i).clone();
            self.v.set(r, i, self.v.get(r, j).clone());
            self.v.set(r, j, t);
        }
        for c in 0..self.v_inv.cols {
            let t = self.v_inv.get(i, c).clone();
            self.v_inv.set(i, c, self.v_inv.get(j, c).clone());
            self.v_inv.set(j, c, t);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.cols {
            let v = self.a.get(i, k) + c * self.a.get(j, k);
            self.a.set(i, k, v);
        }
        for k in 0..self.u.cols {
            let v = self.u.get(i, k) + c * self.u.get(j, k);
            self.u.set(i, k, v);
        }
        // inverse op on u_inv columns: col_j -= c * col_i
        for r in 0..self.u_inv.rows {
            let v = self.u_inv.get(r, j) - c * self.u_inv.get(r, i);
            self.u_inv.set(r, j, v);
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.rows {
            let v = self.a.get(k, i) + c * self.a.get(k, j);
            self.a.set(k, i, v);
        }
        for k in 0..self.v.rows {
            let v = self.v.get(k, i) + c * self.v.get(k, j);
            self.v.set(k, i, v);
        }
        // inverse op on v_inv rows: row_j -= c * row_i
        for cix in 0..self.v_inv.cols {
            let v = self.v_inv.get(j, cix) - c * self.v_inv.get(i, cix);
            self.v_inv.set(j, cix, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols {
            let v = -self.a.get(i, k).clone();
            self.a.set(i, k, v);
        }
        for k in 0..self.u.cols {
            let v = -self.u.get(i, k).clone();
            self.u.set(i, k, v);
        }
        for r in 0..self.u_inv.rows {
            let v = -self.u_inv.get(r, i).clone();
            self.u_inv.set(r, i, v);
        }
    }
}

/// Smith normal form with pivoting on the minimal nonzero absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = SnfState {
        a: m.clone(),
        u: IntMatrix::identity(m.rows),
        u_inv: IntMatrix::identity(m.rows),
        v: IntMatrix::identity(m.cols),
        v_inv: IntMatrix::identity(m.cols),
    };
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        // locate minimal-abs nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if !s.a.get(i, j).is_zero() {
                    match &pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if s.a.get(i, j).abs() < s.a.get(*pi, *pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        // one euclidean reduction pass over row and column t; if any
        // remainder survives, re-select the pivot globally — the minimal
        // remainder is strictly smaller, and re-pivoting keeps the
        // quotients (and hence the entries) from swelling
        let mut dirty = false;
        for i in t + 1..m.rows {
            if !s.a.get(i, t).is_zero() {
                let q = -(s.a.get(i, t) / s.a.get(t, t));
                s.add_row(i, t, &q);
                dirty |= !s.a.get(i, t).is_zero();
            }
        }
        for j in t + 1..m.cols {
            if !s.a.get(t, j).is_zero() {
                let q = -(s.a.get(t, j) / s.a.get(t, t));
                s.add_col(j, t, &q);
                dirty |= !s.a.get(t, j).is_zero();
            }
        }
        if dirty {
            continue; // re-pivot at the same t
        }
        // enforce divisibility of the trailing block by the pivot
        let mut again = false;
        'scan: for i in t + 1..m.rows {
            for j in t + 1..m.cols {
                if !(s.a.get(i, j) % s.a.get(t, t)).is_zero() {
                    s.add_row(t, i, &BigInt::one());
                    again = true;
                    break 'scan;
                }
            }
        }
        if again {
            continue; // redo clearing at the same t
        }
        if s.a.get(t, t).is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    SmithForm { u: s.u, u_inv: s.u_inv, d: s.a, v: s.v, v_inv: s.v_inv }
}

/// Basis (as columns) of the integer kernel `{x : Mx = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..m.cols {
        let dj = if j < diag.len() { diag[j].clone() } else { BigInt::zero() };
        if dj.is_zero() {
            cols.push(snf.v.column(j));
        }
    }
    IntMatrix::from_columns(m.cols, &cols)
}

/// One integer solution of `Mx = b`, if any.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows);
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, ubi) in ub.iter().enumerate() {
        let di = if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ubi.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            if i < m.cols {
                y[i] = q;
            } else if !q.is_zero() {
                return None;
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Canonical invariants of a finitely generated abelian group:
/// free rank plus torsion coefficients `d_1 | d_2 | ...` (each `> 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbGroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl AbGroupInvariants {
    pub fn trivial() -> Self {
        AbGroupInvariants { free_rank: 0, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_bigints(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|s| s.parse().unwrap()).collect()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion_bigints().iter().product())
    }
}

impl fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Finitely presented abelian group `Z^generators / col(relations)`.
#[derive(Debug, Clone)]
pub struct PresentedAbGroup {
    pub generators: usize,
    pub relations: IntMatrix,
    invariants: AbGroupInvariants,
    snf: SmithForm,
}

impl PartialEq for PresentedAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relations == other.relations
    }
}

impl PresentedAbGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows, generators, "relations must have one row per generator");
        let snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut nonzero = 0usize;
        for d in &diag {
            if !d.is_zero() {
                nonzero += 1;
                if *d > BigInt::one() {
                    torsion.push(d.to_string());
                }
            }
        }
        let invariants = AbGroupInvariants { free_rank: generators - nonzero, torsion };
        PresentedAbGroup { generators, relations, invariants, snf }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n` as a one-generator group.
    pub fn cyclic(n: u64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[vec![n as i64]]))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.generators + other.generators, self.relations.block_diag(&other.relations))
    }

    pub fn invariants(&self) -> &AbGroupInvariants {
        &self.invariants
    }

    pub fn is_finite(&self) -> bool {
        self.invariants.free_rank == 0
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.invariants.order()
    }

    /// Does the generator-coordinate vector lie in the relation lattice?
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        solve(&self.relations, x).is_some()
    }

    /// Canonical coordinates of an element: `(U x) mod d` slotwise, where
    /// `U R V = D`. Free slots keep the exact integer.
    pub fn canonical_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let ux = self.snf.u.mul_vec(x);
        let diag = self.snf.diagonal();
        ux.iter()
            .enumerate()
            .map(|(i, v)| {
                let d = if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
                if d.is_zero() {
                    v.clone()
                } else {
                    v.mod_floor(&d)
                }
            })
            .collect()
    }

    /// All elements in generator coordinates, when finite and of order
    /// at most `limit`. Used by test oracles.
    pub fn enumerate_elements(&self, limit: u64) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let diag = self.snf.diagonal();
        let mut elems: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); self.generators]];
        for i in 0..self.generators {
            let d: u64 = if i < diag.len() {
                u64::try_from(&diag[i]).expect("torsion exceeds u64")
            } else {
                unreachable!("finite group has full diagonal")
            };
            let mut next = Vec::new();
            for e in &elems {
                for r in 0..d.max(1) {
                    let mut y = e.clone();
                    y[i] = BigInt::from(r);
                    next.push(y);
                }
            }
            elems = next;
        }
        // convert canonical y-coordinates back to generator coordinates: x = U^{-1} y
        Some(elems.into_iter().map(|y| self.snf.u_inv.mul_vec(&y)).collect())
    }
}

/// Homomorphism of presented groups; column `j` of `matrix` is the image
/// of the `j`-th source generator, in target generator coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AbHom {
    pub source: PresentedAbGroup,
    pub target: PresentedAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: PresentedAbGroup, target: PresentedAbGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows, target.generators);
        assert_eq!(matrix.cols, source.generators);
        AbHom { source, target, matrix }
    }

    pub fn identity(g: &PresentedAbGroup) -> Self {
        AbHom::new(g.clone(), g.clone(), IntMatrix::identity(g.generators))
    }

    pub fn zero(source: &PresentedAbGroup, target: &PresentedAbGroup) -> Self {
        AbHom::new(source.clone(), target.clone(), IntMatrix::zeros(target.generators, source.generators))
    }

    pub fn compose(&self, first: &AbHom) -> AbHom {
        assert_eq!(first.target.generators, self.source.generators);
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        AbHom::new(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom::new(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    /// Equality as maps: columns agree modulo target relations.
    pub fn equals(&self, other: &AbHom) -> bool {
        if self.matrix.cols != other.matrix.cols || self.matrix.rows != other.matrix.rows {
            return false;
        }
        let diff = self.matrix.sub(&other.matrix);
        (0..diff.cols).all(|j| self.target.is_zero_element(&diff.column(j)))
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.matrix.cols).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }
}

/// A hom is well defined when it sends every source relator to zero.
pub fn hom_is_well_defined(h: &AbHom) -> bool {
    let image_of_relations = h.matrix.mul(&h.source.relations);
    (0..image_of_relations.cols).all(|j| h.target.is_zero_element(&image_of_relations.column(j)))
}

/// Presents the subgroup of `Z^m / col(rel)` generated by the columns of
/// `gens`; returns the group and its inclusion matrix.
fn present_subgroup(gens: &IntMatrix, ambient_relations: &IntMatrix) -> (PresentedAbGroup, IntMatrix) {
    // relations among the chosen generators: {c : gens·c ∈ col(rel)}
    let block = gens.hstack(&ambient_relations.neg());
    let ker = kernel_basis(&block);
    let rels = ker.top_rows(gens.cols.min(ker.rows));
    let rels = if gens.cols == 0 { IntMatrix::zeros(0, 0) } else { rels };
    (PresentedAbGroup::new(gens.cols, rels), gens.clone())
}

/// Generating columns of the lattice `{x : A x ∈ col(R_target)}`.
fn preimage_lattice(a: &IntMatrix, target_relations: &IntMatrix) -> IntMatrix {
    let block = a.hstack(&target_relations.neg());
    let ker = kernel_basis(&block);
    let mut cols = Vec::new();
    for j in 0..ker.cols {
        cols.push((0..a.cols).map(|i| ker.get(i, j).clone()).collect());
    }
    IntMatrix::from_columns(a.cols, &cols)
}

/// Kernel of `h` with its inclusion into the source.
pub fn kernel(h: &AbHom) -> (PresentedAbGroup, AbHom) {
    let lat = preimage_lattice(&h.matrix, &h.target.relations);
    let (grp, incl) = present_subgroup(&lat, &h.source.relations);
    let hom = AbHom::new(grp.clone(), h.source.clone(), incl);
    (grp, hom)
}

/// Image of `h` with its inclusion into the target.
pub fn image(h: &AbHom) -> (PresentedAbGroup, AbHom) {
    let (grp, incl) = present_subgroup(&h.matrix, &h.target.relations);
    let hom = AbHom::new(grp.clone(), h.target.clone(), incl);
    (grp, hom)
}

/// Cokernel of `h` with the projection from the target.
pub fn cokernel(h: &AbHom) -> (PresentedAbGroup, AbHom) {
    let rels = h.matrix.hstack(&h.target.relations);
    let grp = PresentedAbGroup::new(h.target.generators, rels);
    let proj = AbHom::new(h.target.clone(), grp.clone(), IntMatrix::identity(h.target.generators));
    (grp, proj)
}

/// Equalizer of a parallel pair, as `ker(h1 - h2)` with inclusion.
pub fn equalizer(h1: &AbHom, h2: &AbHom) -> Result<(PresentedAbGroup, AbHom), AbgrpError> {
    if h1.source != h2.source || h1.target != h2.target {
        return Err(AbgrpError::NotParallel);
    }
    Ok(kernel(&h1.sub(h2)))
}

/// Is `h` an isomorphism (trivial kernel and cokernel)?
pub fn is_isomorphism(h: &AbHom) -> bool {
    hom_is_well_defined(h)
        && kernel(h).0.invariants().is_trivial()
        && cokernel(h).0.invariants().is_trivial()
}

/// Factor `h` through a subgroup of its target: given `incl : S -> T`
/// and `h : G -> T` landing in `S`, produce `G -> S`.
pub fn factor_through_subgroup(h: &AbHom, incl: &AbHom) -> Option<AbHom> {
    assert_eq!(h.target, incl.target);
    // solve incl.matrix · x ≡ h_col (mod target relations) for each column
    let block = incl.matrix.hstack(&h.target.relations);
    let mut cols = Vec::new();
    for j in 0..h.matrix.cols {
        let sol = solve(&block, &h.matrix.column(j))?;
        cols.push(sol[..incl.matrix.cols].to_vec());
    }
    let m = IntMatrix::from_columns(incl.matrix.cols, &cols);
    let out = AbHom::new(h.source.clone(), incl.source.clone(), m);
    if !hom_is_well_defined(&out) {
        return None;
    }
    Some(out)
}

/// Homology at the middle slot of `G_in --d_in--> G --d_out--> G_out`:
/// `ker(d_out) / im(d_in)`.
pub fn homology_at(d_out: &AbHom, d_in: &AbHom) -> Result<PresentedAbGroup, AbgrpError> {
    if d_in.target != d_out.source {
        return Err(AbgrpError::NotAComplex);
    }
    if !d_out.compose(d_in).is_zero_map() {
        return Err(AbgrpError::NotAComplex);
    }
    let cycles = preimage_lattice(&d_out.matrix, &d_out.target.relations);
    // kill both the boundaries and the ambient relations
    let killers = d_in.matrix.hstack(&d_out.source.relations);
    let block = cycles.hstack(&killers.neg());
    let ker = kernel_basis(&block);
    let rels = ker.top_rows(cycles.cols.min(ker.rows));
    let rels = if cycles.cols == 0 { IntMatrix::zeros(0, 0) } else { rels };
    Ok(PresentedAbGroup::new(cycles.cols, rels))
}

/// Isomorphy test by invariant factors, with a witness when both groups
/// are finite.
pub fn iso_test(g: &PresentedAbGroup, h: &PresentedAbGroup) -> (bool, Option<AbHom>) {
    if g.invariants() != h.invariants() {
        return (false, None);
    }
    if !g.is_finite() || !h.is_finite() {
        return (true, None);
    }
    // match torsion slots through canonical coordinates
    let dg = g.snf.diagonal();
    let dh = h.snf.diagonal();
    let nontrivial = |d: &[BigInt]| -> Vec<usize> {
        d.iter().enumerate().filter(|(_, v)| **v > BigInt::one()).map(|(i, _)| i).collect()
    };
    let sg = nontrivial(&dg);
    let sh = nontrivial(&dh);
    debug_assert_eq!(sg.len(), sh.len());
    let mut p = IntMatrix::zeros(h.generators, g.generators);
    for (a, b) in sg.iter().zip(sh.iter()) {
        p.set(*b, *a, BigInt::one());
    }
    let w = h.snf.u_inv.mul(&p).mul(&g.snf.u);
    let hom = AbHom::new(g.clone(), h.clone(), w);
    debug_assert!(is_isomorphism(&hom));
    (true, Some(hom))
}
