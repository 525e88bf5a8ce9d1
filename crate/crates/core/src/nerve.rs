//! Truncated nerve of a finite category as normalized integer chain
//! complexes: loop-freeness analysis, boundary matrices, homology via
//! Smith normal form, functor-induced chain maps, Lefschetz numbers with
//! an exact Hopf-trace cross-check, and strict-fixed-point certificates.

use crate::abgrp::{homology_at, AbGroupInvariants, AbHom, IntMatrix, PresentedAbGroup};
use crate::fincat::{FinCategory, Functor};
use crate::fixpoint::strict_fixed_points;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("nerve is not finite: category has loops, homology is not truncation-invariant")]
    NerveNotFinite,
    #[error("truncation degree {given} is below the longest chain {longest}")]
    TruncationTooShallow { given: usize, longest: usize },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("functor is not an endofunctor")]
    NotEndofunctor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LoopFreeReport {
    pub loop_free: bool,
    /// Longest identity-free composable chain; meaningful when loop_free.
    pub longest_chain: usize,
}

/// Loop-free iff every endomorphism is an identity and the reachability
/// digraph on non-identity morphisms is acyclic.
pub fn is_loop_free(c: &FinCategory) -> LoopFreeReport {
    let n = c.object_count();
    for m in 0..c.morphism_count() {
        if c.dom(m) == c.cod(m) && !c.is_identity(m) {
            return LoopFreeReport { loop_free: false, longest_chain: 0 };
        }
    }
    let mut adj = vec![vec![false; n]; n];
    for m in 0..c.morphism_count() {
        if !c.is_identity(m) {
            adj[c.dom(m)][c.cod(m)] = true;
        }
    }
    // topological sort; cycle detection via Kahn's algorithm
    let mut indeg = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            if adj[x][y] {
                indeg[y] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    while let Some(x) = queue.pop() {
        order.push(x);
        for y in 0..n {
            if adj[x][y] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
    }
    if order.len() < n {
        return LoopFreeReport { loop_free: false, longest_chain: 0 };
    }
    // longest path in the DAG (edge count)
    let mut longest = vec![0usize; n];
    for &x in order.iter().rev() {
        for y in 0..n {
            if adj[x][y] {
                longest[x] = longest[x].max(longest[y] + 1);
            }
        }
    }
    LoopFreeReport {
        loop_free: true,
        longest_chain: longest.iter().copied().max().unwrap_or(0),
    }
}

/// Truncated nerve: per-dimension bases of nondegenerate simplices.
///
/// `simplices[0]` lists single-element chains of object indices; for
/// `n ≥ 1`, `simplices[n]` lists composable sequences of `n` non-identity
/// morphism indices.
#[derive(Debug, Clone)]
pub struct NerveTruncation {
    pub category: Arc<FinCategory>,
    pub max_dim: usize,
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub exact: bool,
    pub loop_report: LoopFreeReport,
}

impl NerveTruncation {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn simplex_label(&self, dim: usize, idx: usize) -> String {
        let c = &self.category;
        let s = &self.simplices[dim][idx];
        if dim == 0 {
            return c.object_id(s[0]).to_string();
        }
        let mut out = c.object_id(c.dom(s[0])).to_string();
        for &m in s {
            out.push_str(&format!("-{}-{}", c.morphism_id(m), c.object_id(c.cod(m))));
        }
        out
    }
}

/// All identity-free composable chains of length ≤ N.
pub fn nerve(c: &Arc<FinCategory>, max_dim: usize) -> NerveTruncation {
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_dim + 1);
    simplices.push((0..c.object_count()).map(|o| vec![o]).collect());
    let nonid: Vec<usize> =
        (0..c.morphism_count()).filter(|&m| !c.is_identity(m)).collect();
    for n in 1..=max_dim {
        let mut level: Vec<Vec<usize>> = Vec::new();
        if n == 1 {
            for &m in &nonid {
                level.push(vec![m]);
            }
        } else {
            for prev in &simplices[n - 1] {
                let end = c.cod(*prev.last().unwrap());
                for &m in &nonid {
                    if c.dom(m) == end {
                        let mut chain = prev.clone();
                        chain.push(m);
                        level.push(chain);
                    }
                }
            }
        }
        simplices.push(level);
    }
    let loop_report = is_loop_free(c);
    let exact = loop_report.loop_free && loop_report.longest_chain <= max_dim;
    NerveTruncation { category: c.clone(), max_dim, simplices, exact, loop_report }
}

/// Normalized integer chain complex of a nerve truncation.
#[derive(Debug, Clone)]
pub struct ChainComplexZ {
    /// `boundaries[n]` is d_n : C_n → C_{n-1} for 1 ≤ n ≤ max_dim.
    pub boundaries: Vec<IntMatrix>,
    pub dims: Vec<usize>,
}

impl ChainComplexZ {
    /// d_n with d_0 and out-of-range degrees as zero matrices of the right
    /// shape.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        if n == 0 || n > self.dims.len() - 1 {
            let rows = if n == 0 { 0 } else { *self.dims.get(n - 1).unwrap_or(&0) };
            let cols = *self.dims.get(n).unwrap_or(&0);
            IntMatrix::zeros(rows, cols)
        } else {
            self.boundaries[n - 1].clone()
        }
    }
}

/// The i-th face of a simplex; `None` when the face is degenerate
/// (a composed or dropped arrow becomes an identity).
fn face(c: &FinCategory, chain: &[usize], i: usize) -> Option<Vec<usize>> {
    let n = chain.len();
    if n == 1 {
        // faces are vertices: dropping X0 leaves cod, dropping X1 leaves dom
        return Some(vec![if i == 0 { c.cod(chain[0]) } else { c.dom(chain[0]) }]);
    }
    let mut out = Vec::with_capacity(n - 1);
    if i == 0 {
        out.extend_from_slice(&chain[1..]);
    } else if i == n {
        out.extend_from_slice(&chain[..n - 1]);
    } else {
        out.extend_from_slice(&chain[..i - 1]);
        let comp = c.compose(chain[i], chain[i - 1]).expect("chain is composable");
        if c.is_identity(comp) {
            return None;
        }
        out.push(comp);
        out.extend_from_slice(&chain[i + 1..]);
    }
    if out.iter().any(|&m| c.is_identity(m)) {
        return None;
    }
    Some(out)
}

/// Boundary matrices d_n = Σ (−1)^i (face i), degenerate faces dropped.
pub fn chain_complex(nv: &NerveTruncation) -> ChainComplexZ {
    let c = &nv.category;
    let index: Vec<BTreeMap<&[usize], usize>> = nv
        .simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let mut boundaries = Vec::new();
    for n in 1..=nv.max_dim {
        let rows = nv.simplices[n - 1].len();
        let cols = nv.simplices[n].len();
        let mut d = IntMatrix::zeros(rows, cols);
        for (j, chain) in nv.simplices[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(fc) = face(c, chain, i) {
                    let r = index[n - 1][fc.as_slice()];
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    d.set(r, j, d.get(r, j) + sign);
                }
            }
        }
        boundaries.push(d);
    }
    let dims = nv.counts();
    let cx = ChainComplexZ { boundaries, dims };
    for n in 1..nv.max_dim {
        let prod = cx.boundary(n).mul(&cx.boundary(n + 1));
        assert!(prod.is_zero(), "d∘d ≠ 0 in degree {}", n + 1);
    }
    cx
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub degree: usize,
    pub invariants: AbGroupInvariants,
    /// Set when the truncation was not exact: groups above may be wrong.
    pub truncation_warning: bool,
}

/// H_n = ker d_n / im d_{n+1}.
pub fn homology(
    cx: &ChainComplexZ,
    nv: &NerveTruncation,
    n: usize,
) -> Result<HomologyReport, NerveError> {
    if n > nv.max_dim {
        return Err(NerveError::DegreeOutOfRange(n));
    }
    let d_out = cx.boundary(n);
    let d_in = cx.boundary(n + 1);
    let c_n = PresentedAbGroup::free(d_out.cols);
    let c_below = PresentedAbGroup::free(d_out.rows);
    let c_above = PresentedAbGroup::free(d_in.cols);
    let g = homology_at(
        &AbHom::new(c_n.clone(), c_below, d_out),
        &AbHom::new(c_above, c_n, d_in),
    )
    .expect("boundary shapes agree by construction");
    Ok(HomologyReport {
        degree: n,
        invariants: g.invariants().clone(),
        truncation_warning: !nv.exact,
    })
}

/// Per-degree matrices of the chain map induced by an endofunctor: a
/// nondegenerate simplex goes to its image chain when that chain is
/// identity-free, else to zero.
pub fn induced_chain_map(f: &Functor, nv: &NerveTruncation) -> Result<Vec<IntMatrix>, NerveError> {
    if !f.is_endofunctor() || f.source != nv.category {
        return Err(NerveError::NotEndofunctor);
    }
    let c = &nv.category;
    let index: Vec<BTreeMap<&[usize], usize>> = nv
        .simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let mut maps = Vec::with_capacity(nv.max_dim + 1);
    for n in 0..=nv.max_dim {
        let k = nv.simplices[n].len();
        let mut m = IntMatrix::zeros(k, k);
        for (j, chain) in nv.simplices[n].iter().enumerate() {
            if n == 0 {
                let img = f.obj(chain[0]);
                m.set(index[0][[img].as_slice()], j, BigInt::one());
            } else {
                let img: Vec<usize> = chain.iter().map(|&x| f.mor(x)).collect();
                if img.iter().all(|&x| !c.is_identity(x)) {
                    m.set(index[n][img.as_slice()], j, BigInt::one());
                }
            }
        }
        maps.push(m);
    }
    // functoriality cross-check: F_{n-1} d_n = d_n F_n
    let cx = chain_complex(nv);
    for n in 1..=nv.max_dim {
        let lhs = maps[n - 1].mul(&cx.boundary(n));
        let rhs = cx.boundary(n).mul(&maps[n]);
        assert_eq!(lhs, rhs, "induced chain map fails to commute with d_{n}");
    }
    Ok(maps)
}

// ---- exact rational linear algebra for homology traces ----

fn rat(i: &BigInt) -> BigRational {
    BigRational::from_integer(i.clone())
}

/// Reduced row echelon form in place; returns pivot column per pivot row.
fn rref(m: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x /= inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for cc in 0..cols {
                    let sub = &m[r][cc] * &factor;
                    m[i][cc] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Independent columns of an integer matrix (a ℚ-basis of its column
/// space), as rational column vectors.
fn column_space_basis(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let mut work: Vec<Vec<BigRational>> =
        (0..m.rows).map(|r| (0..m.cols).map(|c| rat(m.get(r, c))).collect()).collect();
    let pivots = rref(&mut work);
    pivots
        .iter()
        .map(|&c| (0..m.rows).map(|r| rat(m.get(r, c))).collect())
        .collect()
}

/// ℚ-basis of the kernel of an integer matrix.
fn kernel_space_basis(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let k = crate::abgrp::kernel_basis(m);
    (0..k.cols)
        .map(|c| (0..k.rows).map(|r| rat(k.get(r, c))).collect())
        .collect()
}

/// Trace of the map induced by `a` on the subspace spanned by `basis`
/// (columns). The subspace must be invariant under `a`.
fn trace_on_subspace(a: &IntMatrix, basis: &[Vec<BigRational>]) -> BigRational {
    let k = basis.len();
    if k == 0 {
        return BigRational::zero();
    }
    let n = basis[0].len();
    // images A·b_j
    let mut images: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    for b in basis {
        let mut img = vec![BigRational::zero(); n];
        for (r, slot) in img.iter_mut().enumerate() {
            for c in 0..n {
                if !b[c].is_zero() {
                    *slot += rat(a.get(r, c)) * &b[c];
                }
            }
        }
        images.push(img);
    }
    // solve [B | images] → coefficients; B has full column rank
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
            row.extend(images.iter().map(|img| img[r].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    assert_eq!(pivots.len(), k, "basis columns must be independent");
    let mut tr = BigRational::zero();
    for (row, &p) in pivots.iter().enumerate() {
        assert_eq!(p, row, "basis columns must be leading");
        // coefficient of b_row in the expansion of images[row]
        tr += aug[row][k + row].clone();
    }
    tr
}

#[derive(Debug, Clone, Serialize)]
pub struct LefschetzReport {
    pub lefschetz: BigInt,
    /// Per-degree chain-level traces.
    pub chain_traces: Vec<BigInt>,
    /// Per-degree homology-level traces over ℚ (integral in fact).
    pub homology_traces: Vec<String>,
    pub hopf_trace_verified: bool,
}

/// Per-degree traces of the induced maps on H_*(·; ℚ).
pub fn homology_traces(f: &Functor, max_dim: usize) -> Result<Vec<BigRational>, NerveError> {
    let c = &f.source;
    let lr = is_loop_free(c);
    if !lr.loop_free {
        return Err(NerveError::NerveNotFinite);
    }
    if lr.longest_chain > max_dim {
        return Err(NerveError::TruncationTooShallow {
            given: max_dim,
            longest: lr.longest_chain,
        });
    }
    let nv = nerve(c, max_dim);
    let cx = chain_complex(&nv);
    let maps = induced_chain_map(f, &nv)?;
    let mut out = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        // tr H_n = tr|_{cycles} − tr|_{boundaries}
        let z = kernel_space_basis(&cx.boundary(n));
        let b = column_space_basis(&cx.boundary(n + 1));
        out.push(trace_on_subspace(&maps[n], &z) - trace_on_subspace(&maps[n], &b));
    }
    Ok(out)
}

/// Lefschetz number of the induced self-map of the nerve, with the Hopf
/// trace formula verified exactly: the alternating sum of chain traces
/// equals the alternating sum of homology traces over ℚ.
pub fn lefschetz_number(f: &Functor, max_dim: usize) -> Result<LefschetzReport, NerveError> {
    if !f.is_endofunctor() {
        return Err(NerveError::NotEndofunctor);
    }
    let c = &f.source;
    let lr = is_loop_free(c);
    if !lr.loop_free {
        return Err(NerveError::NerveNotFinite);
    }
    if lr.longest_chain > max_dim {
        return Err(NerveError::TruncationTooShallow {
            given: max_dim,
            longest: lr.longest_chain,
        });
    }
    let nv = nerve(c, max_dim);
    let maps = induced_chain_map(f, &nv)?;
    let mut chain_traces = Vec::with_capacity(max_dim + 1);
    let mut l_chain = BigInt::zero();
    for (n, m) in maps.iter().enumerate() {
        let tr = m.trace();
        if n % 2 == 0 {
            l_chain += &tr;
        } else {
            l_chain -= &tr;
        }
        chain_traces.push(tr);
    }
    let h_traces = homology_traces(f, max_dim)?;
    let mut l_hom = BigRational::zero();
    for (n, t) in h_traces.iter().enumerate() {
        if n % 2 == 0 {
            l_hom += t;
        } else {
            l_hom -= t;
        }
    }
    let verified = l_hom == rat(&l_chain);
    assert!(verified, "Hopf trace mismatch: chain {l_chain} vs homology {l_hom}");
    Ok(LefschetzReport {
        lefschetz: l_chain,
        chain_traces,
        homology_traces: h_traces.iter().map(|t| t.to_string()).collect(),
        hopf_trace_verified: verified,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub lefschetz: String,
    pub has_initial: bool,
    /// True when L ≠ 0 or an initial object exists: a strict fixed point
    /// must exist.
    pub prediction: bool,
    pub actual: bool,
    pub strict_points: Vec<String>,
    /// prediction ⇒ actual.
    pub consistent: bool,
}

/// Certificate that nonzero Lefschetz number or an initial object forces a
/// strict fixed point, checked against the actual enumeration.
pub fn strict_certificate(f: &Functor, max_dim: usize) -> Result<CertificateReport, NerveError> {
    let lef = lefschetz_number(f, max_dim)?;
    let c = &f.source;
    let has_initial = c.initial_object().is_some();
    let strict = strict_fixed_points(f).map_err(|_| NerveError::NotEndofunctor)?;
    let prediction = !lef.lefschetz.is_zero() || has_initial;
    let actual = !strict.is_empty();
    Ok(CertificateReport {
        lefschetz: lef.lefschetz.to_string(),
        has_initial,
        prediction,
        actual,
        strict_points: strict,
        consistent: !prediction || actual,
    })
}

/// Certificate for a target functor F' connected to F by a natural
/// transformation: homology traces agree degreewise, so L(F) = L(F')
/// predicts a strict fixed point of F'.
pub fn strict_certificate_via_homotopy(
    f: &Functor,
    f_prime: &Functor,
    max_dim: usize,
) -> Result<CertificateReport, NerveError> {
    let tf = homology_traces(f, max_dim)?;
    let tg = homology_traces(f_prime, max_dim)?;
    assert_eq!(tf, tg, "naturally connected functors must induce equal homology traces");
    let mut rep = strict_certificate(f_prime, max_dim)?;
    let lef = lefschetz_number(f, max_dim)?;
    rep.prediction = !lef.lefschetz.is_zero() || rep.has_initial;
    rep.lefschetz = lef.lefschetz.to_string();
    rep.consistent = !rep.prediction || rep.actual;
    Ok(rep)
}
