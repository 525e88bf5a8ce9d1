//! Fixed points of endofunctors: strict and witnessed fixed points, the
//! category of fixed points S(F) with its faithful forgetful functor,
//! transport of S(F) along natural isomorphisms, and the hom-set colimit
//! whose size detects fixed points for full endofunctors.

use crate::fincat::{
    CategoryError, FinCategory, Functor, FunctorError, NatTransError, NatTransformation,
    RawCategory, RawMorphism,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixError {
    #[error("functor is not an endofunctor")]
    NotEndofunctor,
    #[error("transformation is not a natural isomorphism")]
    NotNaturalIso,
    #[error("{0}")]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Functor(#[from] FunctorError),
    #[error("{0}")]
    NatTrans(#[from] NatTransError),
}

/// A fixed point (X, α : X ≅ F(X)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub object: String,
    pub iso: String,
}

/// Objects on which F acts identically: `F(X) = X` on the nose.
pub fn strict_fixed_points(f: &Functor) -> Result<Vec<String>, FixError> {
    if !f.is_endofunctor() {
        return Err(FixError::NotEndofunctor);
    }
    let c = &f.source;
    Ok((0..c.object_count())
        .filter(|&o| f.obj(o) == o)
        .map(|o| c.object_id(o).to_string())
        .collect())
}

/// All pairs (X, α) with α any isomorphism X → F(X), enumerated in the
/// canonical (object, morphism) order.
pub fn fixed_points(f: &Functor) -> Result<Vec<FixedPoint>, FixError> {
    if !f.is_endofunctor() {
        return Err(FixError::NotEndofunctor);
    }
    let c = &f.source;
    let mut out = Vec::new();
    for x in 0..c.object_count() {
        for a in c.hom(x, f.obj(x)) {
            if c.is_iso(a) {
                out.push(FixedPoint {
                    object: c.object_id(x).to_string(),
                    iso: c.morphism_id(a).to_string(),
                });
            }
        }
    }
    Ok(out)
}

pub fn fix_object_id(object: &str, iso: &str) -> String {
    format!("({object}|{iso})")
}

/// Splits a fixed-point object id `"(X|α)"` into `(X, α)`.
pub fn decode_fix_object(id: &str) -> (String, String) {
    let inner = &id[1..id.len() - 1];
    let bytes = inner.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'|' if depth == 0 => {
                return (inner[..i].to_string(), inner[i + 1..].to_string());
            }
            _ => {}
        }
    }
    panic!("malformed fixed-point object id {id}");
}

/// The category S(F) together with its forgetful functor to the base.
#[derive(Debug, Clone)]
pub struct FixCategoryResult {
    pub carrier: Arc<FinCategory>,
    pub forgetful: Functor,
    pub points: Vec<FixedPoint>,
}

/// Builds S(F): objects are fixed points `(X|α)`; a base morphism
/// `f : X → Y` gives a morphism `(X,α) → (Y,β)` exactly when
/// `F(f) ∘ α = β ∘ f`. Morphism ids reuse the base ids, disambiguated by
/// source and target objects: `"(f|(X|α)|(Y|β))"`.
pub fn fix_category(f: &Functor) -> Result<FixCategoryResult, FixError> {
    let points = fixed_points(f)?;
    let c = &f.source;
    let obj_ids: Vec<String> =
        points.iter().map(|p| fix_object_id(&p.object, &p.iso)).collect();
    let point_idx: Vec<(usize, usize)> = points
        .iter()
        .map(|p| {
            (c.object_index(&p.object).unwrap(), c.morphism_index(&p.iso).unwrap())
        })
        .collect();
    let mut raw = RawCategory {
        objects: obj_ids.clone(),
        morphisms: vec![],
        identities: BTreeMap::new(),
        composition: vec![],
    };
    // (source point, target point, base morphism)
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for (i, &(x, a)) in point_idx.iter().enumerate() {
        for (j, &(y, b)) in point_idx.iter().enumerate() {
            for m in c.hom(x, y) {
                if c.compose(f.mor(m), a) == c.compose(b, m) {
                    triples.push((i, j, m));
                }
            }
        }
    }
    let mor_id = |m: usize, src: usize, tgt: usize| -> String {
        format!("({}|{}|{})", c.morphism_id(m), obj_ids[src], obj_ids[tgt])
    };
    for &(i, j, m) in &triples {
        raw.morphisms.push(RawMorphism {
            id: mor_id(m, i, j),
            dom: obj_ids[i].clone(),
            cod: obj_ids[j].clone(),
        });
    }
    for (i, &(x, _)) in point_idx.iter().enumerate() {
        raw.identities.insert(obj_ids[i].clone(), mor_id(c.identity(x), i, i));
    }
    for &(i, j, m) in &triples {
        for &(j2, k, n) in &triples {
            if j2 != j {
                continue;
            }
            if let Some(nm) = c.compose(n, m) {
                raw.composition.push([
                    mor_id(n, j, k),
                    mor_id(m, i, j),
                    mor_id(nm, i, k),
                ]);
            }
        }
    }
    let carrier = FinCategory::from_raw(&raw)?;
    let mut om = vec![0usize; carrier.object_count()];
    for o in 0..carrier.object_count() {
        let (x, _) = decode_fix_object(carrier.object_id(o));
        om[o] = c.object_index(&x)?;
    }
    let mut mm = vec![0usize; carrier.morphism_count()];
    for m in 0..carrier.morphism_count() {
        let id = carrier.morphism_id(m);
        let (base, _, _) = crate::limits::decode_slice_mor(id);
        mm[m] = c.morphism_index(&base)?;
    }
    let forgetful = Functor::from_indices(carrier.clone(), c.clone(), om, mm)?;
    Ok(FixCategoryResult { carrier, forgetful, points })
}

/// Transport along a natural isomorphism η : F ⇒ F', the functor
/// S(F) → S(F') acting by (X, α) ↦ (X, η_X ∘ α) and identically on
/// underlying morphisms.
pub fn transport(eta: &NatTransformation) -> Result<Functor, FixError> {
    if !eta.is_nat_iso() {
        return Err(FixError::NotNaturalIso);
    }
    if !eta.from.is_endofunctor() || !eta.to.is_endofunctor() {
        return Err(FixError::NotEndofunctor);
    }
    let c = &eta.from.source;
    let sf = fix_category(&eta.from)?;
    let sg = fix_category(&eta.to)?;
    let mut om = vec![0usize; sf.carrier.object_count()];
    for o in 0..sf.carrier.object_count() {
        let (x, a) = decode_fix_object(sf.carrier.object_id(o));
        let xi = c.object_index(&x)?;
        let ai = c.morphism_index(&a)?;
        let new_a = c.compose(eta.component(xi), ai).expect("η_X composes with α");
        om[o] = sg
            .carrier
            .object_index(&fix_object_id(&x, c.morphism_id(new_a)))?;
    }
    let mut mm = vec![0usize; sf.carrier.morphism_count()];
    for m in 0..sf.carrier.morphism_count() {
        let id = sf.carrier.morphism_id(m);
        let (base, _src, _tgt) = crate::limits::decode_slice_mor(id);
        let new_src = sg.carrier.object_id(om[sf.carrier.dom(m)]);
        let new_tgt = sg.carrier.object_id(om[sf.carrier.cod(m)]);
        mm[m] = sg.carrier.morphism_index(&format!("({base}|{new_src}|{new_tgt})"))?;
    }
    Ok(Functor::from_indices(sf.carrier.clone(), sg.carrier.clone(), om, mm)?)
}

/// Transport round-trip report: both composites are identities.
pub fn transport_round_trip(eta: &NatTransformation) -> Result<bool, FixError> {
    let fwd = transport(eta)?;
    let inv = eta.inverse().ok_or(FixError::NotNaturalIso)?;
    let bwd = transport(&inv)?;
    let there = bwd.compose_with(&fwd);
    let back = fwd.compose_with(&bwd);
    Ok(there == Functor::identity(fwd.source.clone())
        && back == Functor::identity(bwd.source.clone()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ColimitReport {
    pub size: usize,
    /// Equivalence classes of pairs (index object id, morphism id).
    pub classes: Vec<Vec<(String, String)>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Colimit of the diagram `X_i ↦ Hom(X, F(X_i))` over the base category,
/// with transitions `φ ↦ F(f) ∘ φ` for every `f : X_i → X_j`, computed by
/// union-find over the disjoint union of the hom-sets.
pub fn hom_colimit(f: &Functor, x: &str) -> Result<ColimitReport, FixError> {
    if !f.is_endofunctor() {
        return Err(FixError::NotEndofunctor);
    }
    let c = &f.source;
    let xi = c.object_index(x)?;
    // elements: (index object i, φ : X → F(X_i))
    let mut elems: Vec<(usize, usize)> = Vec::new();
    let mut pos: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..c.object_count() {
        for phi in c.hom(xi, f.obj(i)) {
            pos.insert((i, phi), elems.len());
            elems.push((i, phi));
        }
    }
    let mut uf = UnionFind::new(elems.len());
    for m in 0..c.morphism_count() {
        let i = c.dom(m);
        let j = c.cod(m);
        let ff = f.mor(m);
        for phi in c.hom(xi, f.obj(i)) {
            let psi = c.compose(ff, phi).expect("transition map composes");
            uf.union(pos[&(i, phi)], pos[&(j, psi)]);
        }
    }
    let mut classes: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    for k in 0..elems.len() {
        let r = uf.find(k);
        let (i, phi) = elems[k];
        classes
            .entry(r)
            .or_default()
            .push((c.object_id(i).to_string(), c.morphism_id(phi).to_string()));
    }
    let classes: Vec<_> = classes.into_values().collect();
    Ok(ColimitReport { size: classes.len(), classes })
}
