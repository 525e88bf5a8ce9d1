//! Pretopologies on finite categories: axiom checking, site-morphism
//! checking, the induced pretopology and pullback construction on the
//! fixed-point category S(F), and additive enrichments (explicit
//! hom-group tables with biproduct witnesses) together with the induced
//! additive structure on S(F).

use crate::fincat::{CategoryError, FinCategory, Functor, ValidationReport};
use crate::fixpoint::{fix_object_id, FixCategoryResult};
use crate::limits::{pullback_idx, slice_mor_id, LimitError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SiteError {
    #[error("iso singleton {iso} missing from cov({object})")]
    IsoSingletonMissing { object: String, iso: String },
    #[error("pulled-back family of cover #{family} of {object} along {arrow} is not listed")]
    BaseChangeMissing { object: String, family: usize, arrow: String },
    #[error("composite refinement of cover #{family} of {object} is not listed")]
    CompositionMissing { object: String, family: usize },
    #[error("no pullback of ({f}, {g})")]
    NoPullback { f: String, g: String },
    #[error("cover #{family} of {object} has leg {leg} whose codomain is not {object}")]
    MalformedCover { object: String, family: usize, leg: String },
    #[error("image of cover #{family} of {object} is not listed at the image object")]
    CoverNotPreserved { object: String, family: usize },
    #[error("comparison morphism for the pullback of ({f}, {g}) is not an isomorphism")]
    PullbackNotPreserved { f: String, g: String },
    #[error("hom({x}, {y}) is not an abelian group: {reason}")]
    HomNotGroup { x: String, y: String, reason: String },
    #[error("composition is not bilinear at ({h}, {f}, {g})")]
    CompositionNotBilinear { h: String, f: String, g: String },
    #[error("biproduct witness for ({left}, {right}) fails the projection/injection laws")]
    BiproductLawFails { left: String, right: String },
    #[error("no zero object")]
    ZeroObjectMissing,
    #[error("functor is not additive: {reason}")]
    FunctorNotAdditive { reason: String },
    #[error("functor is not a site morphism")]
    NotSiteMorphism,
    #[error("{0}")]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Limit(#[from] LimitError),
}

/// Covering families per object. Families are ordered lists of morphism
/// ids with common codomain; order is data (the Čech complex indexes
/// tuples by position).
#[derive(Debug, Clone)]
pub struct Pretopology {
    pub base: Arc<FinCategory>,
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
}

impl Pretopology {
    /// Families of an object as morphism indices.
    pub fn families_of(&self, obj: usize) -> Vec<Vec<usize>> {
        let c = &self.base;
        self.covers
            .get(c.object_id(obj))
            .map(|fams| {
                fams.iter()
                    .map(|f| {
                        f.iter().map(|m| c.morphism_index(m).expect("validated cover leg")).collect()
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Legs a, b into the same object are equivalent when an isomorphism
/// h : dom a → dom b satisfies b∘h = a.
fn legs_equiv(c: &FinCategory, a: usize, b: usize) -> bool {
    if c.cod(a) != c.cod(b) {
        return false;
    }
    c.hom(c.dom(a), c.dom(b))
        .into_iter()
        .any(|h| c.is_iso(h) && c.compose(b, h) == Some(a))
}

/// Family matching. Strict mode: equal leg sets (reindexing allowed).
/// Default mode: mutual leg domination up to cone isomorphism.
fn family_matches(c: &FinCategory, a: &[usize], b: &[usize], strict: bool) -> bool {
    if strict {
        let mut sa: Vec<usize> = a.to_vec();
        let mut sb: Vec<usize> = b.to_vec();
        sa.sort_unstable();
        sa.dedup();
        sb.sort_unstable();
        sb.dedup();
        sa == sb
    } else {
        a.iter().all(|&x| b.iter().any(|&y| legs_equiv(c, x, y)))
            && b.iter().all(|&y| a.iter().any(|&x| legs_equiv(c, x, y)))
    }
}

fn family_listed(c: &FinCategory, fam: &[usize], listed: &[Vec<usize>], strict: bool) -> bool {
    listed.iter().any(|l| family_matches(c, fam, l, strict))
}

/// Axioms of a pretopology: (i) every iso singleton covers, (ii) covers
/// pull back along every arrow into the base, (iii) covers compose with
/// covers of their sources.
pub fn check_pretopology(p: &Pretopology, strict: bool) -> ValidationReport<SiteError> {
    match check_pretopology_inner(p, strict) {
        Ok(()) => ValidationReport::Pass,
        Err(e) => ValidationReport::Fail(e),
    }
}

fn check_pretopology_inner(p: &Pretopology, strict: bool) -> Result<(), SiteError> {
    let c = &p.base;
    // structural: every key resolves, every leg lands on its object
    for (obj, fams) in &p.covers {
        let x = c.object_index(obj)?;
        for (fi, fam) in fams.iter().enumerate() {
            for leg in fam {
                let m = c.morphism_index(leg)?;
                if c.cod(m) != x {
                    return Err(SiteError::MalformedCover {
                        object: obj.clone(),
                        family: fi,
                        leg: leg.clone(),
                    });
                }
            }
        }
    }
    // axiom (i): iso singletons
    for x in 0..c.object_count() {
        let fams = p.families_of(x);
        for m in c.into_object(x) {
            if c.is_iso(m) && !family_listed(c, &[m], &fams, strict) {
                return Err(SiteError::IsoSingletonMissing {
                    object: c.object_id(x).to_string(),
                    iso: c.morphism_id(m).to_string(),
                });
            }
        }
    }
    // axiom (ii): base change
    for x in 0..c.object_count() {
        let fams = p.families_of(x);
        for (fi, fam) in fams.iter().enumerate() {
            for g in c.into_object(x) {
                let y = c.dom(g);
                let mut pulled = Vec::with_capacity(fam.len());
                for &f in fam {
                    let (_, _, q) = pullback_idx(c, f, g).map_err(|_| SiteError::NoPullback {
                        f: c.morphism_id(f).to_string(),
                        g: c.morphism_id(g).to_string(),
                    })?;
                    pulled.push(q); // projection onto Y = dom g
                }
                if !family_listed(c, &pulled, &p.families_of(y), strict) {
                    return Err(SiteError::BaseChangeMissing {
                        object: c.object_id(x).to_string(),
                        family: fi,
                        arrow: c.morphism_id(g).to_string(),
                    });
                }
            }
        }
    }
    // axiom (iii): composition of covers, over every choice of refinement
    for x in 0..c.object_count() {
        let fams = p.families_of(x);
        for (fi, fam) in fams.iter().enumerate() {
            // for each leg, candidate covers of its source
            let choices: Vec<Vec<Vec<usize>>> =
                fam.iter().map(|&f| p.families_of(c.dom(f))).collect();
            if choices.iter().any(|ch| ch.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; fam.len()];
            loop {
                let mut composite = Vec::new();
                for (k, &f) in fam.iter().enumerate() {
                    for &g in &choices[k][idx[k]] {
                        composite.push(c.compose(f, g).expect("refinement legs compose"));
                    }
                }
                if !family_listed(c, &composite, &fams, strict) {
                    return Err(SiteError::CompositionMissing {
                        object: c.object_id(x).to_string(),
                        family: fi,
                    });
                }
                // advance the mixed-radix counter
                let mut k = 0;
                loop {
                    if k == fam.len() {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == fam.len() {
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Site morphism: every cover image is a cover, and the canonical
/// comparison F(X₁ ×_X X₂) → F(X₁) ×_{F(X)} F(X₂) is an isomorphism for
/// every cospan whose pullback exists.
pub fn check_site_morphism(f: &Functor, p: &Pretopology, strict: bool) -> ValidationReport<SiteError> {
    match check_site_morphism_inner(f, p, strict) {
        Ok(()) => ValidationReport::Pass,
        Err(e) => ValidationReport::Fail(e),
    }
}

fn check_site_morphism_inner(f: &Functor, p: &Pretopology, strict: bool) -> Result<(), SiteError> {
    let c = &p.base;
    // (i) cover preservation
    for x in 0..c.object_count() {
        for (fi, fam) in p.families_of(x).iter().enumerate() {
            let image: Vec<usize> = fam.iter().map(|&m| f.mor(m)).collect();
            if !family_listed(c, &image, &p.families_of(f.obj(x)), strict) {
                return Err(SiteError::CoverNotPreserved {
                    object: c.object_id(x).to_string(),
                    family: fi,
                });
            }
        }
    }
    // (ii) pullback preservation via comparison iso
    for a in 0..c.morphism_count() {
        for b in 0..c.morphism_count() {
            if c.cod(a) != c.cod(b) {
                continue;
            }
            let Ok((v, pl, pr)) = pullback_idx(c, a, b) else { continue };
            match pullback_comparison(c, f, a, b, v, pl, pr) {
                Some(cmp) if c.is_iso(cmp) => {}
                _ => {
                    return Err(SiteError::PullbackNotPreserved {
                        f: c.morphism_id(a).to_string(),
                        g: c.morphism_id(b).to_string(),
                    })
                }
            }
        }
    }
    Ok(())
}

/// The canonical map F(V) → F(dom a) ×_{F(cod a)} F(dom b) induced by the
/// image cone (F(pl), F(pr)); `None` when the image pullback or the
/// factorization is missing.
pub(crate) fn pullback_comparison(
    c: &FinCategory,
    f: &Functor,
    a: usize,
    b: usize,
    v: usize,
    pl: usize,
    pr: usize,
) -> Option<usize> {
    let (w, ql, qr) = pullback_idx(c, f.mor(a), f.mor(b)).ok()?;
    c.hom(f.obj(v), w)
        .into_iter()
        .find(|&u| c.compose(ql, u) == Some(f.mor(pl)) && c.compose(qr, u) == Some(f.mor(pr)))
}

/// Induced pretopology on S(F): a family covers (X, α) iff its forgetful
/// image is a listed cover of X. The chosen representative for a listed
/// base family is the family of all its lifts.
pub fn induced_fix_pretopology(
    f: &Functor,
    p: &Pretopology,
    sf: &FixCategoryResult,
    strict: bool,
) -> Result<Pretopology, SiteError> {
    if let ValidationReport::Fail(e) = check_site_morphism(f, p, strict) {
        let _ = e;
        return Err(SiteError::NotSiteMorphism);
    }
    let c = &p.base;
    let car = &sf.carrier;
    let mut covers: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for o in 0..car.object_count() {
        let x = sf.forgetful.obj(o);
        let mut fams = Vec::new();
        for fam in p.families_of(x) {
            // all carrier morphisms into o whose base leg lies in fam
            let lifts: Vec<usize> = car
                .into_object(o)
                .into_iter()
                .filter(|&m| fam.contains(&sf.forgetful.mor(m)))
                .collect();
            // every base leg must be hit, up to the matching semantics
            let image: Vec<usize> = lifts.iter().map(|&m| sf.forgetful.mor(m)).collect();
            if family_matches(c, &image, &fam, strict) {
                fams.push(lifts.iter().map(|&m| car.morphism_id(m).to_string()).collect());
            }
        }
        fams.sort();
        fams.dedup();
        if !fams.is_empty() {
            covers.insert(car.object_id(o).to_string(), fams);
        }
    }
    Ok(Pretopology { base: car.clone(), covers })
}

#[derive(Debug, Clone, Serialize)]
pub struct FixPullbackResult {
    /// Fixed-point object id "(V|σ)" of the vertex.
    pub vertex: String,
    pub proj_left: String,
    pub proj_right: String,
    /// The witness isomorphism σ : V → F(V) in the base.
    pub sigma: String,
    pub universal_verified: bool,
}

/// Pullback in S(F) of fixed-point morphisms f, g with common codomain:
/// the base pullback V of the underlying morphisms carries the witness
/// σ = σ₂⁻¹∘σ₁, where σ₁ is the map induced by the transported cone and
/// σ₂ is the canonical comparison of the site-morphism axiom.
pub fn fix_pullback(
    func: &Functor,
    sf: &FixCategoryResult,
    f_id: &str,
    g_id: &str,
) -> Result<FixPullbackResult, SiteError> {
    let c = &func.source;
    let car = &sf.carrier;
    let fm = car.morphism_index(f_id)?;
    let gm = car.morphism_index(g_id)?;
    if car.cod(fm) != car.cod(gm) {
        return Err(SiteError::NoPullback { f: f_id.into(), g: g_id.into() });
    }
    let bf = sf.forgetful.mor(fm); // underlying f : X₂ → X₁
    let bg = sf.forgetful.mor(gm); // underlying g : X₃ → X₁
    let (alpha2, alpha3) = {
        let o2 = car.dom(fm);
        let o3 = car.dom(gm);
        let a2 = c.morphism_index(&sf.points[o2].iso)?;
        let a3 = c.morphism_index(&sf.points[o3].iso)?;
        (a2, a3)
    };
    let (v, p, q) = pullback_idx(c, bf, bg).map_err(|_| SiteError::NoPullback {
        f: f_id.into(),
        g: g_id.into(),
    })?;
    // σ₁ : V → F(X₂) ×_{F(X₁)} F(X₃), the factorization of the cone
    // (α₂∘p, α₃∘q) through the image pullback
    let (w, ql, qr) = pullback_idx(c, func.mor(bf), func.mor(bg))
        .map_err(|_| SiteError::NotSiteMorphism)?;
    let a2p = c.compose(alpha2, p).expect("cone leg composes");
    let a3q = c.compose(alpha3, q).expect("cone leg composes");
    let sigma1 = c
        .hom(v, w)
        .into_iter()
        .find(|&u| c.compose(ql, u) == Some(a2p) && c.compose(qr, u) == Some(a3q))
        .ok_or(SiteError::NotSiteMorphism)?;
    // σ₂ : F(V) → same image pullback, the canonical comparison
    let sigma2 =
        pullback_comparison(c, func, bf, bg, v, p, q).ok_or(SiteError::NotSiteMorphism)?;
    let sigma2_inv = c.inverse(sigma2).ok_or(SiteError::NotSiteMorphism)?;
    let sigma = c.compose(sigma2_inv, sigma1).expect("comparison composes");
    if !c.is_iso(sigma) {
        return Err(SiteError::NotSiteMorphism);
    }
    // (V, σ) is a fixed point and p, q satisfy the fixed-point squares
    assert_eq!(
        c.compose(func.mor(p), sigma),
        c.compose(alpha2, p),
        "left projection must be a fixed-point morphism"
    );
    assert_eq!(
        c.compose(func.mor(q), sigma),
        c.compose(alpha3, q),
        "right projection must be a fixed-point morphism"
    );
    let vertex = fix_object_id(c.object_id(v), c.morphism_id(sigma));
    let vo = car.object_index(&vertex)?;
    let proj_left =
        slice_mor_id(c.morphism_id(p), &vertex, car.object_id(car.dom(fm)));
    let proj_right =
        slice_mor_id(c.morphism_id(q), &vertex, car.object_id(car.dom(gm)));
    let plm = car.morphism_index(&proj_left)?;
    let prm = car.morphism_index(&proj_right)?;
    // exhaustive universal property in S(F)
    let mut universal = true;
    'outer: for v2 in 0..car.object_count() {
        for p2 in car.hom(v2, car.dom(fm)) {
            for q2 in car.hom(v2, car.dom(gm)) {
                if car.compose(fm, p2) == car.compose(gm, q2) {
                    let n = car
                        .hom(v2, vo)
                        .into_iter()
                        .filter(|&u| {
                            car.compose(plm, u) == Some(p2) && car.compose(prm, u) == Some(q2)
                        })
                        .count();
                    if n != 1 {
                        universal = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(FixPullbackResult {
        vertex,
        proj_left,
        proj_right,
        sigma: c.morphism_id(sigma).to_string(),
        universal_verified: universal,
    })
}

// ---- additive enrichments ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiproductWitness {
    pub left: String,
    pub right: String,
    pub object: String,
    pub inj_left: String,
    pub inj_right: String,
    pub proj_left: String,
    pub proj_right: String,
}

/// Additive structure on a finite category: per-hom-set abelian-group
/// tables (Cayley triples), designated zero morphisms, and biproduct
/// witnesses.
#[derive(Debug, Clone)]
pub struct AbEnrichment {
    pub base: Arc<FinCategory>,
    /// Cayley triples [f, g, f+g] within a single hom-set.
    pub addition: Vec<[String; 3]>,
    /// Triples [X, Y, zero morphism of hom(X, Y)].
    pub zeros: Vec<[String; 3]>,
    pub biproducts: Vec<BiproductWitness>,
}

pub(crate) struct EnrichmentTables {
    pub add: BTreeMap<(usize, usize), usize>,
    pub zero: BTreeMap<(usize, usize), usize>,
    /// (left, right) → (object, inj_l, inj_r, proj_l, proj_r)
    pub biprod: BTreeMap<(usize, usize), (usize, usize, usize, usize, usize)>,
}

impl AbEnrichment {
    pub(crate) fn compile(&self) -> Result<EnrichmentTables, SiteError> {
        let c = &self.base;
        let mut add = BTreeMap::new();
        for [f, g, s] in &self.addition {
            add.insert(
                (c.morphism_index(f)?, c.morphism_index(g)?),
                c.morphism_index(s)?,
            );
        }
        let mut zero = BTreeMap::new();
        for [x, y, z] in &self.zeros {
            zero.insert((c.object_index(x)?, c.object_index(y)?), c.morphism_index(z)?);
        }
        let mut biprod = BTreeMap::new();
        for w in &self.biproducts {
            biprod.insert(
                (c.object_index(&w.left)?, c.object_index(&w.right)?),
                (
                    c.object_index(&w.object)?,
                    c.morphism_index(&w.inj_left)?,
                    c.morphism_index(&w.inj_right)?,
                    c.morphism_index(&w.proj_left)?,
                    c.morphism_index(&w.proj_right)?,
                ),
            );
        }
        Ok(EnrichmentTables { add, zero, biprod })
    }

    /// The designated zero object, when the enrichment passes validation.
    pub fn zero_object(&self) -> Result<usize, SiteError> {
        let t = self.compile()?;
        let c = &self.base;
        (0..c.object_count())
            .find(|&z| t.zero.get(&(z, z)) == Some(&c.identity(z)))
            .ok_or(SiteError::ZeroObjectMissing)
    }
}

/// Checks the enrichment: every hom-set is an abelian group under the
/// table, composition is bilinear, a zero object exists, and every listed
/// biproduct witness satisfies the projection/injection identities.
pub fn check_additive(e: &AbEnrichment) -> ValidationReport<SiteError> {
    match check_additive_inner(e) {
        Ok(()) => ValidationReport::Pass,
        Err(err) => ValidationReport::Fail(err),
    }
}

fn check_additive_inner(e: &AbEnrichment) -> Result<(), SiteError> {
    let c = &e.base;
    let t = e.compile()?;
    let fail = |x: usize, y: usize, reason: &str| SiteError::HomNotGroup {
        x: c.object_id(x).to_string(),
        y: c.object_id(y).to_string(),
        reason: reason.to_string(),
    };
    for x in 0..c.object_count() {
        for y in 0..c.object_count() {
            let hom = c.hom(x, y);
            if hom.is_empty() {
                return Err(fail(x, y, "empty hom-set cannot carry a group"));
            }
            let Some(&z) = t.zero.get(&(x, y)) else {
                return Err(fail(x, y, "no zero designated"));
            };
            if !hom.contains(&z) {
                return Err(fail(x, y, "zero outside the hom-set"));
            }
            for &f in &hom {
                for &g in &hom {
                    let Some(&s) = t.add.get(&(f, g)) else {
                        return Err(fail(x, y, "addition table incomplete"));
                    };
                    if !hom.contains(&s) {
                        return Err(fail(x, y, "addition leaves the hom-set"));
                    }
                    if t.add.get(&(g, f)) != Some(&s) {
                        return Err(fail(x, y, "addition not commutative"));
                    }
                }
                if t.add.get(&(f, z)) != Some(&f) {
                    return Err(fail(x, y, "zero is not neutral"));
                }
                if !hom.iter().any(|&g| t.add.get(&(f, g)) == Some(&z)) {
                    return Err(fail(x, y, "no additive inverse"));
                }
            }
            for &f in &hom {
                for &g in &hom {
                    for &h in &hom {
                        let fg = t.add[&(f, g)];
                        let gh = t.add[&(g, h)];
                        if t.add[&(fg, h)] != t.add[&(f, gh)] {
                            return Err(fail(x, y, "addition not associative"));
                        }
                    }
                }
            }
        }
    }
    // bilinearity of composition
    for h in 0..c.morphism_count() {
        for f in 0..c.morphism_count() {
            for (&(a, b), &s) in &t.add {
                if a != f {
                    continue;
                }
                // h ∘ (f+g) = h∘f + h∘g when composable
                if c.dom(h) == c.cod(f) {
                    let lhs = c.compose(h, s).unwrap();
                    let rhs = t.add[&(c.compose(h, f).unwrap(), c.compose(h, b).unwrap())];
                    if lhs != rhs {
                        return Err(SiteError::CompositionNotBilinear {
                            h: c.morphism_id(h).to_string(),
                            f: c.morphism_id(f).to_string(),
                            g: c.morphism_id(b).to_string(),
                        });
                    }
                }
                // (f+g) ∘ h = f∘h + g∘h when composable
                if c.cod(h) == c.dom(f) {
                    let lhs = c.compose(s, h).unwrap();
                    let rhs = t.add[&(c.compose(f, h).unwrap(), c.compose(b, h).unwrap())];
                    if lhs != rhs {
                        return Err(SiteError::CompositionNotBilinear {
                            h: c.morphism_id(h).to_string(),
                            f: c.morphism_id(f).to_string(),
                            g: c.morphism_id(b).to_string(),
                        });
                    }
                }
            }
        }
    }
    e.zero_object()?;
    // biproduct witnesses
    for w in &e.biproducts {
        let (x, y) = (c.object_index(&w.left)?, c.object_index(&w.right)?);
        let (b, i1, i2, p1, p2) = t.biprod[&(x, y)];
        let ok = c.compose(p1, i1) == Some(c.identity(x))
            && c.compose(p2, i2) == Some(c.identity(y))
            && c.compose(p1, i2) == Some(t.zero[&(y, x)])
            && c.compose(p2, i1) == Some(t.zero[&(x, y)])
            && {
                let e1 = c.compose(i1, p1).unwrap();
                let e2 = c.compose(i2, p2).unwrap();
                t.add[&(e1, e2)] == c.identity(b)
            };
        if !ok {
            return Err(SiteError::BiproductLawFails {
                left: w.left.clone(),
                right: w.right.clone(),
            });
        }
    }
    Ok(())
}

/// Additive functor check: F sends the zero object to a zero object, is
/// additive on every hom-table, and the canonical map
/// σ_XY : F(X⊕Y) → F(X)⊕F(Y) is an isomorphism for every listed
/// biproduct (requires a listed biproduct witness at (F(X), F(Y))).
pub fn check_additive_functor(f: &Functor, e: &AbEnrichment) -> ValidationReport<SiteError> {
    match check_additive_functor_inner(f, e) {
        Ok(()) => ValidationReport::Pass,
        Err(err) => ValidationReport::Fail(err),
    }
}

/// σ_XY = i₁'∘F(p₁) + i₂'∘F(p₂) for the biproduct witness at (X, Y) and
/// the listed witness at (F(X), F(Y)).
pub(crate) fn sigma_xy(
    f: &Functor,
    e: &AbEnrichment,
    t: &EnrichmentTables,
    x: usize,
    y: usize,
) -> Option<usize> {
    let c = &e.base;
    let (_b, _i1, _i2, p1, p2) = *t.biprod.get(&(x, y))?;
    let (_b2, j1, j2, _q1, _q2) = *t.biprod.get(&(f.obj(x), f.obj(y)))?;
    let s1 = c.compose(j1, f.mor(p1))?;
    let s2 = c.compose(j2, f.mor(p2))?;
    t.add.get(&(s1, s2)).copied()
}

fn check_additive_functor_inner(f: &Functor, e: &AbEnrichment) -> Result<(), SiteError> {
    let c = &e.base;
    let t = e.compile()?;
    let z = e.zero_object()?;
    // F(0) is a zero object: its identity is the zero endomorphism
    let fz = f.obj(z);
    if t.zero.get(&(fz, fz)) != Some(&c.identity(fz)) {
        return Err(SiteError::FunctorNotAdditive {
            reason: "image of the zero object is not a zero object".into(),
        });
    }
    // hom-additivity
    for (&(a, b), &s) in &t.add {
        if f.mor(s) != *t.add.get(&(f.mor(a), f.mor(b))).ok_or_else(|| {
            SiteError::FunctorNotAdditive { reason: "image sum missing from table".into() }
        })? {
            return Err(SiteError::FunctorNotAdditive {
                reason: format!(
                    "F({} + {}) ≠ F({}) + F({})",
                    c.morphism_id(a),
                    c.morphism_id(b),
                    c.morphism_id(a),
                    c.morphism_id(b)
                ),
            });
        }
    }
    // σ_XY iso for all listed biproducts
    for w in &e.biproducts {
        let (x, y) = (c.object_index(&w.left)?, c.object_index(&w.right)?);
        let sigma = sigma_xy(f, e, &t, x, y).ok_or_else(|| SiteError::FunctorNotAdditive {
            reason: format!("no biproduct witness at (F({}), F({}))", w.left, w.right),
        })?;
        if !c.is_iso(sigma) {
            return Err(SiteError::FunctorNotAdditive {
                reason: format!("σ at ({}, {}) is not an isomorphism", w.left, w.right),
            });
        }
    }
    Ok(())
}

/// The induced additive structure on S(F): hom-tables and zeros restrict
/// from the base; the zero object is (0, α₀) with α₀ the zero morphism
/// 0 → F(0); the biproduct of (X, α) and (Y, β) is
/// (X⊕Y, σ_XY⁻¹ ∘ (α⊕β)) with inherited injections and projections.
pub fn fix_additive(
    f: &Functor,
    e: &AbEnrichment,
    sf: &FixCategoryResult,
) -> Result<AbEnrichment, SiteError> {
    if let ValidationReport::Fail(err) = check_additive(e) {
        return Err(err);
    }
    if let ValidationReport::Fail(err) = check_additive_functor(f, e) {
        return Err(err);
    }
    let c = &e.base;
    let car = &sf.carrier;
    let t = e.compile()?;
    let car_mor = |base_mor: usize, src_obj: usize, tgt_obj: usize| -> String {
        slice_mor_id(c.morphism_id(base_mor), car.object_id(src_obj), car.object_id(tgt_obj))
    };
    // hom tables restrict: each carrier hom-set maps injectively to a base
    // hom-set closed under addition (closure is a consequence of
    // bilinearity; here it is re-derived and asserted)
    let mut addition = Vec::new();
    let mut zeros = Vec::new();
    for o1 in 0..car.object_count() {
        for o2 in 0..car.object_count() {
            let hom = car.hom(o1, o2);
            for &m1 in &hom {
                for &m2 in &hom {
                    let b1 = sf.forgetful.mor(m1);
                    let b2 = sf.forgetful.mor(m2);
                    let s = t.add[&(b1, b2)];
                    let sid = car_mor(s, o1, o2);
                    let sm = car.morphism_index(&sid).unwrap_or_else(|_| {
                        panic!("sum of fixed-point morphisms must be a fixed-point morphism")
                    });
                    addition.push([
                        car.morphism_id(m1).to_string(),
                        car.morphism_id(m2).to_string(),
                        car.morphism_id(sm).to_string(),
                    ]);
                }
            }
            let x = sf.forgetful.obj(o1);
            let y = sf.forgetful.obj(o2);
            let z = t.zero[&(x, y)];
            let zid = car_mor(z, o1, o2);
            let zm = car
                .morphism_index(&zid)
                .unwrap_or_else(|_| panic!("zero morphism must be a fixed-point morphism"));
            zeros.push([
                car.object_id(o1).to_string(),
                car.object_id(o2).to_string(),
                car.morphism_id(zm).to_string(),
            ]);
        }
    }
    // biproducts
    let mut biproducts = Vec::new();
    for o1 in 0..car.object_count() {
        for o2 in 0..car.object_count() {
            let x = sf.forgetful.obj(o1);
            let y = sf.forgetful.obj(o2);
            let alpha = c.morphism_index(&sf.points[o1].iso)?;
            let beta = c.morphism_index(&sf.points[o2].iso)?;
            let Some(&(b, i1, i2, p1, p2)) = t.biprod.get(&(x, y)) else { continue };
            let Some(sigma) = sigma_xy(f, e, &t, x, y) else { continue };
            let Some(sigma_inv) = c.inverse(sigma) else { continue };
            // α⊕β : X⊕Y → F(X)⊕F(Y) through the witness at the images
            let Some(&(_fb, j1, j2, _q1, _q2)) = t.biprod.get(&(f.obj(x), f.obj(y))) else {
                continue;
            };
            let l1 = c.compose(j1, c.compose(alpha, p1).unwrap()).unwrap();
            let l2 = c.compose(j2, c.compose(beta, p2).unwrap()).unwrap();
            let ab = t.add[&(l1, l2)];
            let gamma = c.compose(sigma_inv, ab).expect("witness composes");
            assert!(c.is_iso(gamma), "biproduct witness iso must be an isomorphism");
            let vertex = fix_object_id(c.object_id(b), c.morphism_id(gamma));
            let vo = car.object_index(&vertex)?;
            biproducts.push(BiproductWitness {
                left: car.object_id(o1).to_string(),
                right: car.object_id(o2).to_string(),
                object: vertex.clone(),
                inj_left: car.morphism_index(&car_mor(i1, o1, vo)).map(|m| car.morphism_id(m).to_string())?,
                inj_right: car.morphism_index(&car_mor(i2, o2, vo)).map(|m| car.morphism_id(m).to_string())?,
                proj_left: car.morphism_index(&car_mor(p1, vo, o1)).map(|m| car.morphism_id(m).to_string())?,
                proj_right: car.morphism_index(&car_mor(p2, vo, o2)).map(|m| car.morphism_id(m).to_string())?,
            });
        }
    }
    addition.sort();
    addition.dedup();
    zeros.sort();
    zeros.dedup();
    Ok(AbEnrichment { base: car.clone(), addition, zeros, biproducts })
}
