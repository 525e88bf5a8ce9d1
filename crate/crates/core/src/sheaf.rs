//! Presheaves of presented abelian groups on a finite site: validation,
//! pullback along endofunctors, the sheaf condition via equalizers, the
//! Čech complex over tuple-indexed iterated fiber products, flabbiness,
//! comparison isomorphisms along site morphisms, Čech-cohomological
//! fixed-point detection, and pointwise exactness preservation.

use crate::abgrp::{
    cokernel, factor_through_subgroup, hom_is_well_defined, image, is_isomorphism, iso_test,
    kernel, AbGroupInvariants, AbHom, AbgrpError, IntMatrix, PresentedAbGroup,
};
use crate::fincat::{CategoryError, FinCategory, Functor, ValidationReport};
use crate::limits::pullback_idx;
use crate::site::Pretopology;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error("restriction along {morphism} is ill-typed or ill-defined")]
    RestrictionIllTyped { morphism: String },
    #[error("functoriality fails on ({g}, {f})")]
    FunctorialityFails { g: String, f: String },
    #[error("value group missing for object {0}")]
    MissingValue(String),
    #[error("functor is not an endofunctor")]
    NotEndofunctor,
    #[error("no pullback of ({f}, {g})")]
    NoPullback { f: String, g: String },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("functor is not a site morphism")]
    NotSiteMorphism,
    #[error("presheaf morphism component at {object} fails naturality")]
    NaturalityFails { object: String },
    #[error("input sequence is not pointwise short exact at {object}: {reason}")]
    NotExactInput { object: String, reason: String },
    #[error("{0}")]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Group(#[from] AbgrpError),
}

/// Presheaf of presented abelian groups: contravariant, so a base morphism
/// `f : X → Y` restricts as `μ(f) : μ(Y) → μ(X)`.
#[derive(Debug, Clone)]
pub struct Presheaf {
    pub site: Pretopology,
    pub values: BTreeMap<String, PresentedAbGroup>,
    pub restrictions: BTreeMap<String, AbHom>,
}

impl Presheaf {
    pub fn value(&self, obj: usize) -> Result<&PresentedAbGroup, SheafError> {
        let id = self.site.base.object_id(obj);
        self.values.get(id).ok_or_else(|| SheafError::MissingValue(id.to_string()))
    }

    pub fn restriction(&self, m: usize) -> Result<&AbHom, SheafError> {
        let id = self.site.base.morphism_id(m);
        self.restrictions
            .get(id)
            .ok_or_else(|| SheafError::RestrictionIllTyped { morphism: id.to_string() })
    }
}

/// Functoriality and typing of all restriction maps.
pub fn validate_presheaf(mu: &Presheaf) -> ValidationReport<SheafError> {
    match validate_presheaf_inner(mu) {
        Ok(()) => ValidationReport::Pass,
        Err(e) => ValidationReport::Fail(e),
    }
}

fn validate_presheaf_inner(mu: &Presheaf) -> Result<(), SheafError> {
    let c = &mu.site.base;
    for m in 0..c.morphism_count() {
        let h = mu.restriction(m)?;
        let bad = || SheafError::RestrictionIllTyped { morphism: c.morphism_id(m).to_string() };
        if h.source != *mu.value(c.cod(m))? || h.target != *mu.value(c.dom(m))? {
            return Err(bad());
        }
        if !hom_is_well_defined(h) {
            return Err(bad());
        }
    }
    for o in 0..c.object_count() {
        let h = mu.restriction(c.identity(o))?;
        if !h.equals(&AbHom::identity(mu.value(o)?)) {
            return Err(SheafError::FunctorialityFails {
                g: c.morphism_id(c.identity(o)).to_string(),
                f: c.morphism_id(c.identity(o)).to_string(),
            });
        }
    }
    for g in 0..c.morphism_count() {
        for f in 0..c.morphism_count() {
            if let Some(gf) = c.compose(g, f) {
                // contravariance: μ(g∘f) = μ(f)∘μ(g)
                let lhs = mu.restriction(gf)?;
                let rhs = mu.restriction(f)?.compose(mu.restriction(g)?);
                if !lhs.equals(&rhs) {
                    return Err(SheafError::FunctorialityFails {
                        g: c.morphism_id(g).to_string(),
                        f: c.morphism_id(f).to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// F*μ = μ∘F: values X ↦ μ(F(X)), restrictions f ↦ μ(F(f)).
pub fn pullback_presheaf(mu: &Presheaf, f: &Functor) -> Result<Presheaf, SheafError> {
    if !f.is_endofunctor() || f.source != mu.site.base {
        return Err(SheafError::NotEndofunctor);
    }
    let c = &mu.site.base;
    let mut values = BTreeMap::new();
    for o in 0..c.object_count() {
        values.insert(c.object_id(o).to_string(), mu.value(f.obj(o))?.clone());
    }
    let mut restrictions = BTreeMap::new();
    for m in 0..c.morphism_count() {
        restrictions.insert(c.morphism_id(m).to_string(), mu.restriction(f.mor(m))?.clone());
    }
    Ok(Presheaf { site: mu.site.clone(), values, restrictions })
}

/// Direct sum of a list of groups with generator offsets.
fn direct_sum_list(groups: &[&PresentedAbGroup]) -> (PresentedAbGroup, Vec<usize>) {
    let mut acc = PresentedAbGroup::trivial();
    let mut offsets = Vec::with_capacity(groups.len());
    for g in groups {
        offsets.push(acc.generators);
        acc = acc.direct_sum(g);
    }
    (acc, offsets)
}

/// Writes `block` into `m` at row offset `r0`, column offset `c0`,
/// accumulating with sign.
fn add_block(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix, sign: i32) {
    for i in 0..block.rows {
        for j in 0..block.cols {
            let cur = m.get(r0 + i, c0 + j).clone();
            let add = if sign >= 0 { block.get(i, j).clone() } else { -block.get(i, j) };
            m.set(r0 + i, c0 + j, cur + add);
        }
    }
}

/// Iterated left-associated fiber product of cover legs: the vertex for a
/// tuple together with its projections to each leg source and the
/// composite map to the base object.
#[derive(Debug, Clone)]
struct TupleVertex {
    vertex: usize,
    /// projections to dom(leg_k) for each position k
    projections: Vec<usize>,
    /// composite to the covered object
    to_base: usize,
}

/// Builds the vertex for `tuple` over `legs` (indices into the family).
fn tuple_vertex(
    c: &FinCategory,
    legs: &[usize],
    tuple: &[usize],
    cache: &mut BTreeMap<Vec<usize>, TupleVertex>,
) -> Result<TupleVertex, SheafError> {
    if let Some(v) = cache.get(tuple) {
        return Ok(v.clone());
    }
    let tv = if tuple.len() == 1 {
        let leg = legs[tuple[0]];
        TupleVertex {
            vertex: c.dom(leg),
            projections: vec![c.identity(c.dom(leg))],
            to_base: leg,
        }
    } else {
        let prefix = &tuple[..tuple.len() - 1];
        let head = tuple_vertex(c, legs, prefix, cache)?;
        let leg = legs[*tuple.last().unwrap()];
        let (v, p, q) = pullback_idx(c, head.to_base, leg).map_err(|_| SheafError::NoPullback {
            f: c.morphism_id(head.to_base).to_string(),
            g: c.morphism_id(leg).to_string(),
        })?;
        let mut projections: Vec<usize> = head
            .projections
            .iter()
            .map(|&pr| c.compose(pr, p).expect("projection composes"))
            .collect();
        projections.push(q);
        let to_base = c.compose(leg, q).expect("leg composes");
        TupleVertex { vertex: v, projections, to_base }
    };
    cache.insert(tuple.to_vec(), tv.clone());
    Ok(tv)
}

/// The morphism `k̂` forgetting position `k`: the unique map from the full
/// tuple's vertex to the reduced tuple's vertex commuting with all
/// retained projections, found by scanning the hom-set.
fn forget_map(
    c: &FinCategory,
    full: &TupleVertex,
    reduced: &TupleVertex,
    k: usize,
) -> Option<usize> {
    let retained: Vec<usize> = (0..full.projections.len()).filter(|&i| i != k).collect();
    c.hom(full.vertex, reduced.vertex).into_iter().find(|&u| {
        reduced
            .projections
            .iter()
            .zip(&retained)
            .all(|(&rp, &fi)| c.compose(rp, u) == Some(full.projections[fi]))
    })
}

fn tuples(arity: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * arity);
        for t in &out {
            for i in 0..arity {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// The Čech complex of a cover: `C^q = ⊕ over tuples in A^{q+1}` of the
/// value on the tuple's fiber-product vertex, with the alternating-sum
/// differential over forgetful projections.
#[derive(Debug, Clone)]
pub struct CechComplex {
    /// Cochain groups C^0 .. C^N.
    pub degrees: Vec<PresentedAbGroup>,
    /// d^q : C^q → C^{q+1}, for q = 0 .. N−1.
    pub differentials: Vec<AbHom>,
    /// Augmentation μ(X) → C^0 with components μ(leg_i).
    pub augmentation: AbHom,
    /// Vertices per degree, in tuple order (for reporting).
    pub vertex_ids: Vec<Vec<String>>,
}

/// Builds the Čech complex of `family` (a listed cover of `obj`) with
/// coefficients in `mu`, truncated at degree `max_degree`.
pub fn cech_complex(
    mu: &Presheaf,
    obj: usize,
    family: &[usize],
    max_degree: usize,
) -> Result<CechComplex, SheafError> {
    let c = &mu.site.base;
    let arity = family.len();
    let mut cache: BTreeMap<Vec<usize>, TupleVertex> = BTreeMap::new();
    let mut degrees = Vec::with_capacity(max_degree + 1);
    let mut offsets_per_degree = Vec::with_capacity(max_degree + 1);
    let mut verts_per_degree: Vec<Vec<TupleVertex>> = Vec::with_capacity(max_degree + 1);
    let mut vertex_ids = Vec::with_capacity(max_degree + 1);
    let mut tuples_per_degree = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        let ts = tuples(arity, q + 1);
        let mut verts = Vec::with_capacity(ts.len());
        for t in &ts {
            verts.push(tuple_vertex(c, family, t, &mut cache)?);
        }
        let groups: Vec<&PresentedAbGroup> = verts
            .iter()
            .map(|v| mu.value(v.vertex))
            .collect::<Result<_, _>>()?;
        let (sum, offsets) = direct_sum_list(&groups);
        vertex_ids.push(verts.iter().map(|v| c.object_id(v.vertex).to_string()).collect());
        degrees.push(sum);
        offsets_per_degree.push(offsets);
        verts_per_degree.push(verts);
        tuples_per_degree.push(ts);
    }
    // differentials
    let mut differentials = Vec::with_capacity(max_degree);
    for q in 0..max_degree {
        let src = &degrees[q];
        let tgt = &degrees[q + 1];
        let mut m = IntMatrix::zeros(tgt.generators, src.generators);
        for (ti, t) in tuples_per_degree[q + 1].iter().enumerate() {
            let full = &verts_per_degree[q + 1][ti];
            for k in 0..t.len() {
                let mut reduced_t = t.clone();
                reduced_t.remove(k);
                let si = tuples_per_degree[q]
                    .iter()
                    .position(|s| *s == reduced_t)
                    .expect("reduced tuple listed");
                let reduced = &verts_per_degree[q][si];
                let khat = forget_map(c, full, reduced, k).ok_or_else(|| SheafError::NoPullback {
                    f: c.object_id(full.vertex).to_string(),
                    g: c.object_id(reduced.vertex).to_string(),
                })?;
                // μ(k̂) : μ(reduced vertex) → μ(full vertex)
                let r = mu.restriction(khat)?;
                add_block(
                    &mut m,
                    offsets_per_degree[q + 1][ti],
                    offsets_per_degree[q][si],
                    &r.matrix,
                    if k % 2 == 0 { 1 } else { -1 },
                );
            }
        }
        differentials.push(AbHom::new(src.clone(), tgt.clone(), m));
    }
    for q in 0..max_degree.saturating_sub(1) {
        assert!(
            differentials[q + 1].compose(&differentials[q]).is_zero_map(),
            "Čech differential fails d∘d = 0 at degree {q}"
        );
    }
    // augmentation μ(X) → C^0
    let mx = mu.value(obj)?;
    let mut aug = IntMatrix::zeros(degrees[0].generators, mx.generators);
    for (i, &leg) in family.iter().enumerate() {
        let r = mu.restriction(leg)?;
        add_block(&mut aug, offsets_per_degree[0][i], 0, &r.matrix, 1);
    }
    let augmentation = AbHom::new(mx.clone(), degrees[0].clone(), aug);
    Ok(CechComplex { degrees, differentials, augmentation, vertex_ids })
}

/// H^n(𝒰, μ) = ker d^n / im d^{n−1} (with d^{−1} = 0).
pub fn cech_cohomology(
    mu: &Presheaf,
    obj: usize,
    family: &[usize],
    n: usize,
    max_degree: usize,
) -> Result<PresentedAbGroup, SheafError> {
    if n > max_degree {
        return Err(SheafError::DegreeOutOfRange(n));
    }
    let cx = cech_complex(mu, obj, family, max_degree.max(n + 1))?;
    cohomology_of(&cx, n)
}

/// H^n of an already-built complex.
pub fn cohomology_of(cx: &CechComplex, n: usize) -> Result<PresentedAbGroup, SheafError> {
    if n + 1 > cx.differentials.len() {
        return Err(SheafError::DegreeOutOfRange(n));
    }
    let d_out = &cx.differentials[n];
    let (cycles, incl) = kernel(d_out);
    if n == 0 {
        return Ok(cycles);
    }
    let d_in = &cx.differentials[n - 1];
    let factored = factor_through_subgroup(d_in, &incl)
        .expect("boundaries are cycles since d∘d = 0");
    Ok(cokernel(&factored).0)
}

#[derive(Debug, Clone, Serialize)]
pub struct SheafReport {
    pub is_sheaf: bool,
    /// First failing (object, family index) when not a sheaf.
    pub witness: Option<(String, usize)>,
}

/// Sheaf condition: for every object and listed cover, the augmentation
/// μ(X) → ker(d^0) ⊂ C^0 is an isomorphism.
pub fn is_sheaf(mu: &Presheaf) -> Result<SheafReport, SheafError> {
    let c = &mu.site.base;
    for x in 0..c.object_count() {
        for (fi, fam) in mu.site.families_of(x).iter().enumerate() {
            let cx = cech_complex(mu, x, fam, 1)?;
            let (_, incl) = kernel(&cx.differentials[0]);
            let cmp = factor_through_subgroup(&cx.augmentation, &incl);
            let ok = match cmp {
                Some(h) => is_isomorphism(&h),
                None => false,
            };
            if !ok {
                return Ok(SheafReport {
                    is_sheaf: false,
                    witness: Some((c.object_id(x).to_string(), fi)),
                });
            }
        }
    }
    Ok(SheafReport { is_sheaf: true, witness: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct FlabbyReport {
    pub flabby: bool,
    pub max_degree: usize,
    /// First violation (object, family index, degree).
    pub witness: Option<(String, usize, usize)>,
}

/// Hⁿ(𝒰, μ) = 0 for every listed cover and 0 < n ≤ max_degree. The
/// verdict is degree-truncated by construction.
pub fn is_flabby(mu: &Presheaf, max_degree: usize) -> Result<FlabbyReport, SheafError> {
    let c = &mu.site.base;
    for x in 0..c.object_count() {
        for (fi, fam) in mu.site.families_of(x).iter().enumerate() {
            let cx = cech_complex(mu, x, fam, max_degree + 1)?;
            for n in 1..=max_degree {
                let h = cohomology_of(&cx, n)?;
                if !h.invariants().is_trivial() {
                    return Ok(FlabbyReport {
                        flabby: false,
                        max_degree,
                        witness: Some((c.object_id(x).to_string(), fi, n)),
                    });
                }
            }
        }
    }
    Ok(FlabbyReport { flabby: true, max_degree, witness: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// Per-degree verdicts that φ_q is an isomorphism.
    pub phi_iso: Vec<bool>,
    /// Ladder commutation with differentials per degree.
    pub ladder_commutes: Vec<bool>,
    /// Degreewise Hⁿ(𝒰, μ∘F) ≅ Hⁿ(F(𝒰), μ) for n < max checked degree.
    pub cohomology_isomorphic: Vec<bool>,
    pub all_verified: bool,
}

/// Comparison isomorphism φ_q : C^q(𝒰, μ∘F) → C^q(F𝒰, μ) along a site
/// morphism: componentwise μ of the inverse of the canonical comparison
/// F(W_t) → W'_t of iterated pullbacks.
pub fn comparison_iso(
    mu: &Presheaf,
    f: &Functor,
    obj: usize,
    family: &[usize],
    max_degree: usize,
) -> Result<ComparisonReport, SheafError> {
    let c = &mu.site.base;
    let muf = pullback_presheaf(mu, f)?;
    let image_family: Vec<usize> = family.iter().map(|&m| f.mor(m)).collect();
    let cx_src = cech_complex(&muf, obj, family, max_degree)?;
    let cx_tgt = cech_complex(mu, f.obj(obj), &image_family, max_degree)?;
    let arity = family.len();
    let mut cache_u: BTreeMap<Vec<usize>, TupleVertex> = BTreeMap::new();
    let mut cache_v: BTreeMap<Vec<usize>, TupleVertex> = BTreeMap::new();
    let mut phis: Vec<AbHom> = Vec::with_capacity(max_degree + 1);
    let mut phi_iso = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        let ts = tuples(arity, q + 1);
        let src = &cx_src.degrees[q];
        let tgt = &cx_tgt.degrees[q];
        let mut m = IntMatrix::zeros(tgt.generators, src.generators);
        let mut src_off = 0usize;
        let mut tgt_offsets = Vec::with_capacity(ts.len());
        let mut acc = 0usize;
        for t in &ts {
            let w_img = tuple_vertex(c, &image_family, t, &mut cache_v)?;
            tgt_offsets.push(acc);
            acc += mu.value(w_img.vertex)?.generators;
            let _ = t;
        }
        for (ti, t) in ts.iter().enumerate() {
            let w = tuple_vertex(c, family, t, &mut cache_u)?;
            let w_img = tuple_vertex(c, &image_family, t, &mut cache_v)?;
            // canonical comparison u : F(W) → W' matching projections
            let u = c
                .hom(f.obj(w.vertex), w_img.vertex)
                .into_iter()
                .find(|&u| {
                    w_img
                        .projections
                        .iter()
                        .zip(&w.projections)
                        .all(|(&pq, &p)| c.compose(pq, u) == Some(f.mor(p)))
                })
                .ok_or(SheafError::NotSiteMorphism)?;
            let u_inv = c.inverse(u).ok_or(SheafError::NotSiteMorphism)?;
            // component: μ(u⁻¹) : μ(F(W)) → μ(W')
            let comp = mu.restriction(u_inv)?;
            add_block(&mut m, tgt_offsets[ti], src_off, &comp.matrix, 1);
            src_off += mu.value(f.obj(w.vertex))?.generators;
        }
        let phi = AbHom::new(src.clone(), tgt.clone(), m);
        phi_iso.push(is_isomorphism(&phi));
        phis.push(phi);
    }
    let mut ladder = Vec::with_capacity(max_degree);
    for q in 0..max_degree {
        let lhs = phis[q + 1].compose(&cx_src.differentials[q]);
        let rhs = cx_tgt.differentials[q].compose(&phis[q]);
        ladder.push(lhs.equals(&rhs));
    }
    let mut coh = Vec::new();
    for n in 0..max_degree {
        let h_src = cohomology_of(&cx_src, n)?;
        let h_tgt = cohomology_of(&cx_tgt, n)?;
        coh.push(iso_test(&h_src, &h_tgt).0);
    }
    let all = phi_iso.iter().all(|&b| b) && ladder.iter().all(|&b| b) && coh.iter().all(|&b| b);
    Ok(ComparisonReport {
        phi_iso,
        ladder_commutes: ladder,
        cohomology_isomorphic: coh,
        all_verified: all,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CechFixedPointReport {
    pub object: String,
    /// Per (presheaf index, cover index, degree): invariants of
    /// Hⁿ(𝒰, μ), Hⁿ(𝒰, μ∘F), Hⁿ(F𝒰, μ).
    pub rows: Vec<CechFixedPointRow>,
    /// Hⁿ(𝒰, μ) ≅ Hⁿ(F𝒰, μ) throughout.
    pub declaration: bool,
    /// The bridge Hⁿ(𝒰, μ) ≅ Hⁿ(𝒰, μ∘F) agrees with the declaration.
    pub bridge_consistent: bool,
    pub truncated_at: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CechFixedPointRow {
    pub presheaf: usize,
    pub cover: usize,
    pub degree: usize,
    pub h_cover: AbGroupInvariants,
    pub h_pullback: AbGroupInvariants,
    pub h_image: AbGroupInvariants,
}

/// Čech-cohomological fixed-point detection, relative to a finite test
/// family of sheaves and a degree bound.
pub fn cech_fixed_point_report(
    f: &Functor,
    obj: &str,
    test_presheaves: &[Presheaf],
    max_degree: usize,
) -> Result<CechFixedPointReport, SheafError> {
    let mut rows = Vec::new();
    let mut declaration = true;
    let mut bridge = true;
    let mut x_opt = None;
    for (pi, mu) in test_presheaves.iter().enumerate() {
        let c = &mu.site.base;
        let x = c.object_index(obj)?;
        x_opt = Some(obj.to_string());
        let muf = pullback_presheaf(mu, f)?;
        for (ci, fam) in mu.site.families_of(x).iter().enumerate() {
            let image_family: Vec<usize> = fam.iter().map(|&m| f.mor(m)).collect();
            for n in 0..max_degree {
                let h_cover = cech_cohomology(mu, x, fam, n, max_degree)?;
                let h_pull = cech_cohomology(&muf, x, fam, n, max_degree)?;
                let h_image = cech_cohomology(mu, f.obj(x), &image_family, n, max_degree)?;
                let decl_here = iso_test(&h_cover, &h_image).0;
                let bridge_here = iso_test(&h_cover, &h_pull).0;
                declaration &= decl_here;
                bridge &= bridge_here == decl_here;
                rows.push(CechFixedPointRow {
                    presheaf: pi,
                    cover: ci,
                    degree: n,
                    h_cover: h_cover.invariants().clone(),
                    h_pullback: h_pull.invariants().clone(),
                    h_image: h_image.invariants().clone(),
                });
            }
        }
    }
    Ok(CechFixedPointReport {
        object: x_opt.unwrap_or_else(|| obj.to_string()),
        rows,
        declaration,
        bridge_consistent: bridge,
        truncated_at: max_degree,
    })
}

/// Natural transformation of presheaves.
#[derive(Debug, Clone)]
pub struct PresheafMorphism {
    pub from: Presheaf,
    pub to: Presheaf,
    pub components: BTreeMap<String, AbHom>,
}

impl PresheafMorphism {
    pub fn component(&self, obj: usize) -> Result<&AbHom, SheafError> {
        let id = self.from.site.base.object_id(obj);
        self.components.get(id).ok_or_else(|| SheafError::MissingValue(id.to_string()))
    }

    pub fn validate(&self) -> Result<(), SheafError> {
        let c = &self.from.site.base;
        for m in 0..c.morphism_count() {
            let x = c.dom(m);
            let y = c.cod(m);
            // naturality: ν(f) ∘ comp_Y = comp_X ∘ μ(f)
            let lhs = self.to.restriction(m)?.compose(self.component(y)?);
            let rhs = self.component(x)?.compose(self.from.restriction(m)?);
            if !lhs.equals(&rhs) {
                return Err(SheafError::NaturalityFails {
                    object: c.object_id(y).to_string(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    pub input_exact: bool,
    pub image_exact: bool,
}

fn short_exact_at(
    m1: &PresheafMorphism,
    m2: &PresheafMorphism,
    obj: usize,
) -> Result<(), SheafError> {
    let c = &m1.from.site.base;
    let a = m1.component(obj)?;
    let b = m2.component(obj)?;
    let fail = |reason: &str| SheafError::NotExactInput {
        object: c.object_id(obj).to_string(),
        reason: reason.to_string(),
    };
    if !kernel(a).0.invariants().is_trivial() {
        return Err(fail("left map is not injective"));
    }
    if !cokernel(b).0.invariants().is_trivial() {
        return Err(fail("right map is not surjective"));
    }
    if !b.compose(a).is_zero_map() {
        return Err(fail("composite is nonzero"));
    }
    // im a = ker b: a factors through ker b and the factored map is onto
    let (_, incl) = kernel(b);
    let factored = factor_through_subgroup(a, &incl).ok_or_else(|| fail("image not in kernel"))?;
    if !cokernel(&factored).0.invariants().is_trivial() {
        return Err(fail("image is a proper subgroup of the kernel"));
    }
    let _ = image(a);
    Ok(())
}

/// Prop-style exactness preservation: a pointwise short exact sequence of
/// presheaves stays pointwise short exact after pullback along F (the
/// image sequence is the original one evaluated at F-images).
pub fn check_exactness_preserved(
    f: &Functor,
    m1: &PresheafMorphism,
    m2: &PresheafMorphism,
) -> Result<ExactnessReport, SheafError> {
    m1.validate()?;
    m2.validate()?;
    let c = &m1.from.site.base;
    for o in 0..c.object_count() {
        short_exact_at(m1, m2, o)?;
    }
    for o in 0..c.object_count() {
        short_exact_at(m1, m2, f.obj(o)).map_err(|e| match e {
            SheafError::NotExactInput { object, reason } => SheafError::NotExactInput {
                object: format!("F-image {object}"),
                reason,
            },
            e => e,
        })?;
    }
    Ok(ExactnessReport { input_exact: true, image_exact: true })
}

/// Convenience: the constant presheaf with a fixed value group and
/// identity restrictions.
pub fn constant_presheaf(site: &Pretopology, g: &PresentedAbGroup) -> Presheaf {
    let c = &site.base;
    let values: BTreeMap<String, PresentedAbGroup> =
        c.objects().iter().map(|o| (o.clone(), g.clone())).collect();
    let restrictions: BTreeMap<String, AbHom> = (0..c.morphism_count())
        .map(|m| (c.morphism_id(m).to_string(), AbHom::identity(g)))
        .collect();
    Presheaf { site: site.clone(), values, restrictions }
}

/// Brute-force cohomology oracle for finite cochain groups: enumerates
/// cocycles and coboundaries as explicit element sets and returns
/// |ker| / |im| (the order of Hⁿ). Only usable when the relevant groups
/// have at most `limit` elements.
pub fn cech_cohomology_order_oracle(
    mu: &Presheaf,
    obj: usize,
    family: &[usize],
    n: usize,
    max_degree: usize,
    limit: u64,
) -> Result<Option<BigInt>, SheafError> {
    let cx = cech_complex(mu, obj, family, max_degree.max(n + 1))?;
    let cn = &cx.degrees[n];
    let Some(elems) = cn.enumerate_elements(limit) else { return Ok(None) };
    let d_out = &cx.differentials[n];
    let kernel_count = elems
        .iter()
        .filter(|e| {
            let img = d_out.matrix.mul_vec(e);
            d_out.target.is_zero_element(&img)
        })
        .count();
    let image_count = if n == 0 {
        BigInt::one()
    } else {
        let d_in = &cx.differentials[n - 1];
        let Some(below) = cx.degrees[n - 1].enumerate_elements(limit) else {
            return Ok(None);
        };
        let mut seen: std::collections::BTreeSet<Vec<BigInt>> = Default::default();
        for e in &below {
            let img = d_in.matrix.mul_vec(e);
            seen.insert(cn.canonical_coords(&img));
        }
        BigInt::from(seen.len())
    };
    Ok(Some(BigInt::from(kernel_count) / image_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Functor;
    use crate::stdcats;
    use num_traits::ToPrimitive;

    fn inv(h: &PresentedAbGroup) -> (usize, Vec<String>) {
        (h.invariants().free_rank, h.invariants().torsion.clone())
    }

    #[test]
    fn constant_presheaf_validates_and_is_sheaf_on_contractible_site() {
        let site = stdcats::contractible_site();
        let mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(2));
        assert!(validate_presheaf(&mu).is_pass());
        assert!(is_sheaf(&mu).unwrap().is_sheaf);
    }

    #[test]
    fn mutated_restriction_detected() {
        let site = stdcats::contractible_site();
        let mut mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(2));
        // break functoriality on a non-identity morphism
        let z2 = PresentedAbGroup::cyclic(2);
        mu.restrictions.insert("wu".into(), AbHom::zero(&z2, &z2));
        match validate_presheaf(&mu) {
            ValidationReport::Fail(SheafError::FunctorialityFails { .. }) => {}
            r => panic!("expected FunctorialityFails, got {r:?}"),
        }
    }

    #[test]
    fn components_presheaf_validates_and_is_sheaf() {
        let mu = stdcats::pseudocircle_components_presheaf();
        assert!(validate_presheaf(&mu).is_pass());
        assert!(is_sheaf(&mu).unwrap().is_sheaf);
    }

    #[test]
    fn non_sheaf_detected() {
        let site = stdcats::contractible_site();
        let mut mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(2));
        // kill the value over X while keeping Z/2 on the cover {u, v}
        mu.values.insert("X".into(), PresentedAbGroup::trivial());
        let z2 = PresentedAbGroup::cyclic(2);
        let triv = PresentedAbGroup::trivial();
        for m in ["u", "v", "w"] {
            mu.restrictions
                .insert(m.into(), AbHom::new(triv.clone(), z2.clone(), IntMatrix::zeros(1, 0)));
        }
        mu.restrictions.insert("id:X".into(), AbHom::identity(&triv));
        assert!(validate_presheaf(&mu).is_pass());
        let rep = is_sheaf(&mu).unwrap();
        assert!(!rep.is_sheaf);
        assert_eq!(rep.witness.unwrap().0, "X");
    }

    #[test]
    fn pullback_presheaf_identity() {
        let site = stdcats::contractible_site();
        let mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(4));
        let id = Functor::identity(site.base.clone());
        let muf = pullback_presheaf(&mu, &id).unwrap();
        assert!(validate_presheaf(&muf).is_pass());
        for (k, v) in &mu.values {
            assert_eq!(muf.values[k], *v);
        }
    }

    #[test]
    fn cech_contractible_golden_values() {
        let site = stdcats::contractible_site();
        let mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(2));
        let c = &site.base;
        let x = c.object_index("X").unwrap();
        let fam = vec![c.morphism_index("u").unwrap(), c.morphism_index("v").unwrap()];
        let h0 = cech_cohomology(&mu, x, &fam, 0, 3).unwrap();
        assert_eq!(inv(&h0), (0, vec!["2".to_string()]));
        let h1 = cech_cohomology(&mu, x, &fam, 1, 3).unwrap();
        assert_eq!(inv(&h1), (0, vec![]));
        let h2 = cech_cohomology(&mu, x, &fam, 2, 3).unwrap();
        assert_eq!(inv(&h2), (0, vec![]));
        // brute-force element-count oracle
        let o0 = cech_cohomology_order_oracle(&mu, x, &fam, 0, 3, 4096).unwrap().unwrap();
        assert_eq!(o0.to_u64().unwrap(), 2);
        let o1 = cech_cohomology_order_oracle(&mu, x, &fam, 1, 3, 4096).unwrap().unwrap();
        assert_eq!(o1.to_u64().unwrap(), 1);
    }

    #[test]
    fn cech_pseudocircle_golden_values() {
        let mu = stdcats::pseudocircle_components_presheaf();
        let c = &mu.site.base;
        let x = c.object_index("X").unwrap();
        let fam = vec![c.morphism_index("u").unwrap(), c.morphism_index("v").unwrap()];
        let h0 = cech_cohomology(&mu, x, &fam, 0, 2).unwrap();
        assert_eq!(inv(&h0), (0, vec!["2".to_string()]));
        let h1 = cech_cohomology(&mu, x, &fam, 1, 2).unwrap();
        assert_eq!(inv(&h1), (0, vec!["2".to_string()]));
        // brute force: groups are ≤ Z/2², cochain spaces ≤ 2^8
        let o0 = cech_cohomology_order_oracle(&mu, x, &fam, 0, 2, 1 << 16).unwrap().unwrap();
        assert_eq!(o0.to_u64().unwrap(), 2);
        let o1 = cech_cohomology_order_oracle(&mu, x, &fam, 1, 2, 1 << 16).unwrap().unwrap();
        assert_eq!(o1.to_u64().unwrap(), 2);
    }

    #[test]
    fn singleton_iso_cover_collapses() {
        let site = stdcats::contractible_site();
        let mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(6));
        let c = &site.base;
        let x = c.object_index("X").unwrap();
        let fam = vec![c.morphism_index("id:X").unwrap()];
        let h0 = cech_cohomology(&mu, x, &fam, 0, 3).unwrap();
        assert_eq!(inv(&h0), (0, vec!["6".to_string()]));
        for n in 1..3 {
            let h = cech_cohomology(&mu, x, &fam, n, 3).unwrap();
            assert_eq!(inv(&h), (0, vec![]), "degree {n}");
        }
    }

    #[test]
    fn flabby_reports() {
        let site = stdcats::contractible_site();
        let mu = constant_presheaf(&site, &PresentedAbGroup::cyclic(2));
        assert!(is_flabby(&mu, 3).unwrap().flabby);
        let comp = stdcats::pseudocircle_components_presheaf();
        let rep = is_flabby(&comp, 3).unwrap();
        assert!(!rep.flabby);
        let (obj, _, deg) = rep.witness.unwrap();
        assert_eq!(obj, "X");
        assert_eq!(deg, 1);
    }

    #[test]
    fn comparison_iso_identity_and_swap() {
        let mu = stdcats::pseudocircle_components_presheaf();
        let c = mu.site.base.clone();
        let x = c.object_index("X").unwrap();
        let fam = vec![c.morphism_index("u").unwrap(), c.morphism_index("v").unwrap()];
        let id = Functor::identity(c.clone());
        let rep = comparison_iso(&mu, &id, x, &fam, 2).unwrap();
        assert!(rep.all_verified);
        let swap = stdcats::pseudocircle_swap(&c);
        let rep = comparison_iso(&mu, &swap, x, &fam, 2).unwrap();
        assert!(rep.all_verified, "{rep:?}");
    }

    #[test]
    fn cech_fixed_point_pseudocircle() {
        let mu = stdcats::pseudocircle_components_presheaf();
        let c = mu.site.base.clone();
        let swap = stdcats::pseudocircle_swap(&c);
        // X is a strict fixed point of the swap
        let rep = cech_fixed_point_report(&swap, "X", &[mu.clone()], 3).unwrap();
        assert!(rep.declaration);
        assert!(rep.bridge_consistent);
        // U is not fixed (F(U) = V) but the symmetric sheaf still satisfies
        // the cohomological condition
        let rep = cech_fixed_point_report(&swap, "U", &[mu], 3).unwrap();
        assert!(rep.declaration);
    }

    #[test]
    fn exactness_preserved() {
        let site = stdcats::contractible_site();
        let z2 = PresentedAbGroup::cyclic(2);
        let z4 = PresentedAbGroup::cyclic(4);
        let a = constant_presheaf(&site, &z2);
        let b = constant_presheaf(&site, &z4);
        let ccc = constant_presheaf(&site, &z2);
        // 0 → Z/2 →·2→ Z/4 →mod 2→ Z/2 → 0
        let c = &site.base;
        let comp1: BTreeMap<String, AbHom> = c
            .objects()
            .iter()
            .map(|o| (o.clone(), AbHom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]]))))
            .collect();
        let comp2: BTreeMap<String, AbHom> = c
            .objects()
            .iter()
            .map(|o| (o.clone(), AbHom::new(z4.clone(), z2.clone(), IntMatrix::from_rows(&[vec![1]]))))
            .collect();
        let m1 = PresheafMorphism { from: a.clone(), to: b.clone(), components: comp1 };
        let m2 = PresheafMorphism { from: b, to: ccc, components: comp2 };
        let id = Functor::identity(site.base.clone());
        let rep = check_exactness_preserved(&id, &m1, &m2).unwrap();
        assert!(rep.input_exact && rep.image_exact);
        // breaking exactness is detected: replace the left map by zero
        let mut m1b = m1.clone();
        for (_, h) in m1b.components.iter_mut() {
            *h = AbHom::zero(&a.values["X"], &h.target);
        }
        assert!(matches!(
            check_exactness_preserved(&id, &m1b, &m2),
            Err(SheafError::NotExactInput { .. })
        ));
    }
}
