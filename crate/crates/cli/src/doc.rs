//! Workbench document: a single JSON file with named categories,
//! functors, transformations, pretopologies, enrichments, presheaves and
//! presheaf morphisms, cross-referenced by name. Every entity is
//! validated on load; loading either yields fully-checked core objects or
//! the first error with its location.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use fixcat_core::abgrp::{AbHom, IntMatrix, PresentedAbGroup};
use fixcat_core::fincat::{FinCategory, Functor, NatTransformation, RawCategory};
use fixcat_core::sheaf::{validate_presheaf, Presheaf, PresheafMorphism};
use fixcat_core::site::{AbEnrichment, BiproductWitness, Pretopology};
use fixcat_core::fincat::ValidationReport;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{kind} {entity}: unresolved reference to {referenced}")]
    Reference { kind: &'static str, entity: String, referenced: String },
    #[error("{kind} {entity} fails validation: {message}")]
    Validation { kind: &'static str, entity: String, message: String },
    #[error("unknown {kind} {name}")]
    UnknownEntity { kind: &'static str, name: String },
}

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DocumentFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, RawCategory>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transformations: BTreeMap<String, TransformationDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pretopologies: BTreeMap<String, PretopologyDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub enrichments: BTreeMap<String, EnrichmentDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaf_morphisms: BTreeMap<String, PresheafMorphismDef>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctorDef {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TransformationDef {
    pub from: String,
    pub to: String,
    /// Object id → component morphism id in the target category.
    pub components: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PretopologyDef {
    pub category: String,
    /// Object id → covering families, each an array of morphism ids.
    pub covers: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EnrichmentDef {
    pub category: String,
    /// Cayley triples [f, g, f+g] within a hom-set.
    pub addition: Vec<[String; 3]>,
    /// Triples [X, Y, zero of hom(X, Y)].
    pub zeros: Vec<[String; 3]>,
    #[serde(default)]
    pub biproducts: Vec<BiproductWitness>,
}

/// Finitely presented abelian group `Z^generators / col(relations)`;
/// `relations` is row-major with one row per generator.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDef {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresheafDef {
    pub pretopology: String,
    /// Object id → value group.
    pub values: BTreeMap<String, GroupDef>,
    /// Morphism id f : X → Y → matrix of μ(f) : μ(Y) → μ(X), row-major
    /// with one row per generator of μ(X).
    pub restrictions: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresheafMorphismDef {
    pub from: String,
    pub to: String,
    /// Object id → matrix of the component μ(X) → ν(X), row-major with
    /// one row per generator of ν(X).
    pub components: BTreeMap<String, Vec<Vec<i64>>>,
}

/// Fully resolved, validated document.
pub struct Workbench {
    pub file: DocumentFile,
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub functors: BTreeMap<String, Functor>,
    pub transformations: BTreeMap<String, NatTransformation>,
    pub pretopologies: BTreeMap<String, Pretopology>,
    pub enrichments: BTreeMap<String, AbEnrichment>,
    pub presheaves: BTreeMap<String, Presheaf>,
    pub presheaf_morphisms: BTreeMap<String, PresheafMorphism>,
}

fn group_of(def: &GroupDef, kind: &'static str, entity: &str) -> Result<PresentedAbGroup, LoadError> {
    let relations = if def.relations.is_empty() {
        IntMatrix::zeros(def.generators, 0)
    } else {
        if def.relations.len() != def.generators
            || def.relations.iter().any(|r| r.len() != def.relations[0].len())
        {
            return Err(LoadError::Validation {
                kind,
                entity: entity.to_string(),
                message: "relation matrix must have one row per generator, all rows equal length"
                    .into(),
            });
        }
        IntMatrix::from_rows(&def.relations)
    };
    Ok(PresentedAbGroup::new(def.generators, relations))
}

fn hom_of(
    matrix: &[Vec<i64>],
    source: &PresentedAbGroup,
    target: &PresentedAbGroup,
    kind: &'static str,
    entity: &str,
    at: &str,
) -> Result<AbHom, LoadError> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    if rows != target.generators
        || matrix.iter().any(|r| r.len() != cols)
        || (rows > 0 && cols != source.generators)
        || (rows == 0 && source.generators != 0 && target.generators != 0)
    {
        return Err(LoadError::Validation {
            kind,
            entity: entity.to_string(),
            message: format!(
                "matrix at {at} must be {}x{} (target generators x source generators)",
                target.generators, source.generators
            ),
        });
    }
    let m = if rows == 0 {
        IntMatrix::zeros(target.generators, source.generators)
    } else {
        IntMatrix::from_rows(matrix)
    };
    Ok(AbHom::new(source.clone(), target.clone(), m))
}

impl Workbench {
    pub fn load(path: &Path) -> Result<Workbench, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let file: DocumentFile =
            serde_json::from_str(&text).map_err(|source| LoadError::Parse {
                path: path.display().to_string(),
                source,
            })?;
        Self::resolve(file)
    }

    pub fn resolve(file: DocumentFile) -> Result<Workbench, LoadError> {
        let mut categories = BTreeMap::new();
        for (name, raw) in &file.categories {
            let c = FinCategory::from_raw(raw).map_err(|e| LoadError::Validation {
                kind: "category",
                entity: name.clone(),
                message: e.to_string(),
            })?;
            categories.insert(name.clone(), c);
        }
        let cat = |name: &str, entity: &str, kind: &'static str| -> Result<Arc<FinCategory>, LoadError> {
            categories.get(name).cloned().ok_or_else(|| LoadError::Reference {
                kind,
                entity: entity.to_string(),
                referenced: name.to_string(),
            })
        };

        let mut functors = BTreeMap::new();
        for (name, def) in &file.functors {
            let src = cat(&def.source, name, "functor")?;
            let tgt = cat(&def.target, name, "functor")?;
            let f = Functor::new(src, tgt, &def.objects, &def.morphisms).map_err(|e| {
                LoadError::Validation {
                    kind: "functor",
                    entity: name.clone(),
                    message: e.to_string(),
                }
            })?;
            functors.insert(name.clone(), f);
        }
        let fun = |name: &str, entity: &str, kind: &'static str| -> Result<Functor, LoadError> {
            functors.get(name).cloned().ok_or_else(|| LoadError::Reference {
                kind,
                entity: entity.to_string(),
                referenced: name.to_string(),
            })
        };

        let mut transformations = BTreeMap::new();
        for (name, def) in &file.transformations {
            let from = fun(&def.from, name, "transformation")?;
            let to = fun(&def.to, name, "transformation")?;
            let eta = NatTransformation::new(from, to, &def.components).map_err(|e| {
                LoadError::Validation {
                    kind: "transformation",
                    entity: name.clone(),
                    message: e.to_string(),
                }
            })?;
            transformations.insert(name.clone(), eta);
        }

        let mut pretopologies = BTreeMap::new();
        for (name, def) in &file.pretopologies {
            let base = cat(&def.category, name, "pretopology")?;
            // structural check only: legs resolve and land on their object;
            // the axioms themselves are the business of `site-check`
            for (obj, fams) in &def.covers {
                let x = base.object_index(obj).map_err(|_| LoadError::Reference {
                    kind: "pretopology",
                    entity: name.clone(),
                    referenced: obj.clone(),
                })?;
                for fam in fams {
                    for leg in fam {
                        let m = base.morphism_index(leg).map_err(|_| LoadError::Reference {
                            kind: "pretopology",
                            entity: name.clone(),
                            referenced: leg.clone(),
                        })?;
                        if base.cod(m) != x {
                            return Err(LoadError::Validation {
                                kind: "pretopology",
                                entity: name.clone(),
                                message: format!("cover leg {leg} does not land on {obj}"),
                            });
                        }
                    }
                }
            }
            pretopologies
                .insert(name.clone(), Pretopology { base, covers: def.covers.clone() });
        }

        let mut enrichments = BTreeMap::new();
        for (name, def) in &file.enrichments {
            let base = cat(&def.category, name, "enrichment")?;
            let check_mor = |id: &str| -> Result<(), LoadError> {
                base.morphism_index(id).map(|_| ()).map_err(|_| LoadError::Reference {
                    kind: "enrichment",
                    entity: name.clone(),
                    referenced: id.to_string(),
                })
            };
            let check_obj = |id: &str| -> Result<(), LoadError> {
                base.object_index(id).map(|_| ()).map_err(|_| LoadError::Reference {
                    kind: "enrichment",
                    entity: name.clone(),
                    referenced: id.to_string(),
                })
            };
            for [f, g, s] in &def.addition {
                check_mor(f)?;
                check_mor(g)?;
                check_mor(s)?;
            }
            for [x, y, z] in &def.zeros {
                check_obj(x)?;
                check_obj(y)?;
                check_mor(z)?;
            }
            for b in &def.biproducts {
                check_obj(&b.left)?;
                check_obj(&b.right)?;
                check_obj(&b.object)?;
                for m in [&b.inj_left, &b.inj_right, &b.proj_left, &b.proj_right] {
                    check_mor(m)?;
                }
            }
            enrichments.insert(
                name.clone(),
                AbEnrichment {
                    base,
                    addition: def.addition.clone(),
                    zeros: def.zeros.clone(),
                    biproducts: def.biproducts.clone(),
                },
            );
        }

        let mut presheaves = BTreeMap::new();
        for (name, def) in &file.presheaves {
            let site = pretopologies.get(&def.pretopology).cloned().ok_or_else(|| {
                LoadError::Reference {
                    kind: "presheaf",
                    entity: name.clone(),
                    referenced: def.pretopology.clone(),
                }
            })?;
            let c = &site.base;
            let mut values = BTreeMap::new();
            for (obj, g) in &def.values {
                c.object_index(obj).map_err(|_| LoadError::Reference {
                    kind: "presheaf",
                    entity: name.clone(),
                    referenced: obj.clone(),
                })?;
                values.insert(obj.clone(), group_of(g, "presheaf", name)?);
            }
            let value_at = |o: usize| -> Result<&PresentedAbGroup, LoadError> {
                values.get(c.object_id(o)).ok_or_else(|| LoadError::Validation {
                    kind: "presheaf",
                    entity: name.clone(),
                    message: format!("no value group for object {}", c.object_id(o)),
                })
            };
            let mut restrictions = BTreeMap::new();
            for (mor, rows) in &def.restrictions {
                let m = c.morphism_index(mor).map_err(|_| LoadError::Reference {
                    kind: "presheaf",
                    entity: name.clone(),
                    referenced: mor.clone(),
                })?;
                let src = value_at(c.cod(m))?;
                let tgt = value_at(c.dom(m))?;
                restrictions.insert(
                    mor.clone(),
                    hom_of(rows, src, tgt, "presheaf", name, mor)?,
                );
            }
            let mu = Presheaf { site, values, restrictions };
            if let ValidationReport::Fail(e) = validate_presheaf(&mu) {
                return Err(LoadError::Validation {
                    kind: "presheaf",
                    entity: name.clone(),
                    message: e.to_string(),
                });
            }
            presheaves.insert(name.clone(), mu);
        }

        let mut presheaf_morphisms = BTreeMap::new();
        for (name, def) in &file.presheaf_morphisms {
            let from = presheaves.get(&def.from).cloned().ok_or_else(|| LoadError::Reference {
                kind: "presheaf morphism",
                entity: name.clone(),
                referenced: def.from.clone(),
            })?;
            let to = presheaves.get(&def.to).cloned().ok_or_else(|| LoadError::Reference {
                kind: "presheaf morphism",
                entity: name.clone(),
                referenced: def.to.clone(),
            })?;
            let c = from.site.base.clone();
            let mut components = BTreeMap::new();
            for (obj, rows) in &def.components {
                let o = c.object_index(obj).map_err(|_| LoadError::Reference {
                    kind: "presheaf morphism",
                    entity: name.clone(),
                    referenced: obj.clone(),
                })?;
                let src = from.value(o).map_err(|e| LoadError::Validation {
                    kind: "presheaf morphism",
                    entity: name.clone(),
                    message: e.to_string(),
                })?;
                let tgt = to.value(o).map_err(|e| LoadError::Validation {
                    kind: "presheaf morphism",
                    entity: name.clone(),
                    message: e.to_string(),
                })?;
                components.insert(
                    obj.clone(),
                    hom_of(rows, src, tgt, "presheaf morphism", name, obj)?,
                );
            }
            let nu = PresheafMorphism { from, to, components };
            nu.validate().map_err(|e| LoadError::Validation {
                kind: "presheaf morphism",
                entity: name.clone(),
                message: e.to_string(),
            })?;
            presheaf_morphisms.insert(name.clone(), nu);
        }

        Ok(Workbench {
            file,
            categories,
            functors,
            transformations,
            pretopologies,
            enrichments,
            presheaves,
            presheaf_morphisms,
        })
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>, LoadError> {
        self.categories
            .get(name)
            .ok_or(LoadError::UnknownEntity { kind: "category", name: name.to_string() })
    }

    pub fn functor(&self, name: &str) -> Result<&Functor, LoadError> {
        self.functors
            .get(name)
            .ok_or(LoadError::UnknownEntity { kind: "functor", name: name.to_string() })
    }

    pub fn transformation(&self, name: &str) -> Result<&NatTransformation, LoadError> {
        self.transformations
            .get(name)
            .ok_or(LoadError::UnknownEntity { kind: "transformation", name: name.to_string() })
    }

    pub fn pretopology(&self, name: &str) -> Result<&Pretopology, LoadError> {
        self.pretopologies
            .get(name)
            .ok_or(LoadError::UnknownEntity { kind: "pretopology", name: name.to_string() })
    }

    pub fn enrichment(&self, name: &str) -> Result<&AbEnrichment, LoadError> {
        self.enrichments
            .get(name)
            .ok_or(LoadError::UnknownEntity { kind: "enrichment", name: name.to_string() })
    }

    pub fn presheaf(&self, name: &str) -> Result<&Presheaf, LoadError> {
        self.presheaves
            .get(name)
            .ok_or(LoadError::UnknownEntity { kind: "presheaf", name: name.to_string() })
    }

    pub fn presheaf_morphism(&self, name: &str) -> Result<&PresheafMorphism, LoadError> {
        self.presheaf_morphisms.get(name).ok_or(LoadError::UnknownEntity {
            kind: "presheaf morphism",
            name: name.to_string(),
        })
    }
}
