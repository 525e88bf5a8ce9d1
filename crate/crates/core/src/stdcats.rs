//! Standard example categories, sites, presheaves and enrichments used
//! across the test suites and shipped as CLI fixtures.

use crate::abgrp::{AbHom, IntMatrix, PresentedAbGroup};
use crate::fincat::{FinCategory, Functor, RawCategory, RawMorphism};
use crate::sheaf::Presheaf;
use crate::site::{AbEnrichment, BiproductWitness, Pretopology};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Builds a thin category (at most one morphism between any ordered pair
/// of objects). `le(x, y)` declares a morphism x → y for x ≠ y and must
/// be closed under composition; `arrow_name` and `id_name` choose ids.
fn thin(
    objects: &[&str],
    le: impl Fn(usize, usize) -> bool,
    arrow_name: impl Fn(&str, &str) -> String,
    id_name: impl Fn(&str) -> String,
) -> Arc<FinCategory> {
    let n = objects.len();
    let mor_name = |x: usize, y: usize| -> String {
        if x == y {
            id_name(objects[x])
        } else {
            arrow_name(objects[x], objects[y])
        }
    };
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || le(x, y) {
                morphisms.push(RawMorphism {
                    id: mor_name(x, y),
                    dom: objects[x].to_string(),
                    cod: objects[y].to_string(),
                });
                pairs.push((x, y));
            }
        }
    }
    let mut composition = Vec::new();
    for &(gx, gy) in &pairs {
        for &(fx, fy) in &pairs {
            if fy == gx {
                composition.push([mor_name(gx, gy), mor_name(fx, fy), mor_name(fx, gy)]);
            }
        }
    }
    let raw = RawCategory {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms,
        identities: objects
            .iter()
            .map(|o| (o.to_string(), id_name(o)))
            .collect(),
        composition,
    };
    FinCategory::from_raw(&raw).expect("standard thin category is valid")
}

/// For thin targets the morphism action is forced by the object map.
fn thin_endofunctor(c: &Arc<FinCategory>, om: Vec<usize>) -> Functor {
    let mm: Vec<usize> = (0..c.morphism_count())
        .map(|m| c.hom(om[c.dom(m)], om[c.cod(m)])[0])
        .collect();
    Functor::from_indices(c.clone(), c.clone(), om, mm).expect("monotone map is a functor")
}

/// Two objects 0, 1 and a single arrow a : 0 → 1.
pub fn walking_arrow_raw() -> RawCategory {
    RawCategory {
        objects: vec!["0".into(), "1".into()],
        morphisms: vec![
            RawMorphism { id: "id0".into(), dom: "0".into(), cod: "0".into() },
            RawMorphism { id: "id1".into(), dom: "1".into(), cod: "1".into() },
            RawMorphism { id: "a".into(), dom: "0".into(), cod: "1".into() },
        ],
        identities: BTreeMap::from([("0".into(), "id0".into()), ("1".into(), "id1".into())]),
        composition: vec![
            ["id0".into(), "id0".into(), "id0".into()],
            ["id1".into(), "id1".into(), "id1".into()],
            ["a".into(), "id0".into(), "a".into()],
            ["id1".into(), "a".into(), "a".into()],
        ],
    }
}

pub fn walking_arrow() -> Arc<FinCategory> {
    FinCategory::from_raw(&walking_arrow_raw()).expect("walking arrow is valid")
}

/// n isolated objects o0, …, o{n−1}.
pub fn discrete(n: usize) -> Arc<FinCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    thin(&refs, |_, _| false, |a, b| format!("{a}->{b}"), |o| format!("id:{o}"))
}

/// n objects with exactly one morphism in every hom-set.
pub fn codiscrete_groupoid(n: usize) -> Arc<FinCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    thin(&refs, |_, _| true, |a, b| format!("m:{a}->{b}"), |o| format!("m:{o}->{o}"))
}

/// Objects A, B with two parallel arrows f, g : A → B.
pub fn parallel_pair() -> Arc<FinCategory> {
    let raw = RawCategory {
        objects: vec!["A".into(), "B".into()],
        morphisms: vec![
            RawMorphism { id: "idA".into(), dom: "A".into(), cod: "A".into() },
            RawMorphism { id: "idB".into(), dom: "B".into(), cod: "B".into() },
            RawMorphism { id: "f".into(), dom: "A".into(), cod: "B".into() },
            RawMorphism { id: "g".into(), dom: "A".into(), cod: "B".into() },
        ],
        identities: BTreeMap::from([("A".into(), "idA".into()), ("B".into(), "idB".into())]),
        composition: vec![
            ["idA".into(), "idA".into(), "idA".into()],
            ["idB".into(), "idB".into(), "idB".into()],
            ["f".into(), "idA".into(), "f".into()],
            ["g".into(), "idA".into(), "g".into()],
            ["idB".into(), "f".into(), "f".into()],
            ["idB".into(), "g".into(), "g".into()],
        ],
    };
    FinCategory::from_raw(&raw).expect("parallel pair is valid")
}

/// One object ∗ with Z/n as endomorphisms: g{i}∘g{j} = g{(i+j) mod n}.
pub fn cyclic_group_category(n: usize) -> Arc<FinCategory> {
    assert!(n >= 1 && n <= 9, "single-digit ids keep lexicographic order numeric");
    let g = |i: usize| format!("g{i}");
    let morphisms = (0..n)
        .map(|i| RawMorphism { id: g(i), dom: "*".into(), cod: "*".into() })
        .collect();
    let mut composition = Vec::new();
    for i in 0..n {
        for j in 0..n {
            composition.push([g(i), g(j), g((i + j) % n)]);
        }
    }
    let raw = RawCategory {
        objects: vec!["*".into()],
        morphisms,
        identities: BTreeMap::from([("*".into(), g(0))]),
        composition,
    };
    FinCategory::from_raw(&raw).expect("cyclic group category is valid")
}

/// The poset of all subsets of `letters`, ordered by inclusion. The empty
/// set is named "0"; other subsets concatenate their letters in order.
pub fn subset_lattice(letters: &[&str]) -> Arc<FinCategory> {
    let n = letters.len();
    assert!(n <= 6, "subset lattice fixtures stay small");
    let name = |mask: usize| -> String {
        if mask == 0 {
            "0".to_string()
        } else {
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| letters[i]).collect()
        }
    };
    let names: Vec<String> = (0..1usize << n).map(name).collect();
    let mut sorted: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    sorted.sort();
    let mask_of: BTreeMap<&str, usize> =
        names.iter().enumerate().map(|(m, s)| (s.as_str(), m)).collect();
    thin(
        &sorted,
        |x, y| {
            let (a, b) = (mask_of[sorted[x]], mask_of[sorted[y]]);
            a & b == a && a != b
        },
        |a, b| format!("{a}->{b}"),
        |o| format!("id:{o}"),
    )
}

/// A cospan A → C ← B with no pullback (no object maps to both legs).
pub fn cospan_only() -> Arc<FinCategory> {
    thin(
        &["A", "B", "C"],
        |x, y| y == 2 && x != 2,
        |a, _| if a == "A" { "f".into() } else { "g".into() },
        |o| format!("id{o}"),
    )
}

/// The linear order 0 < 1 < … < n−1.
pub fn chain_poset(n: usize) -> Arc<FinCategory> {
    assert!(n <= 10, "single-digit ids keep lexicographic order numeric");
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    thin(&refs, |x, y| x < y, |a, b| format!("{a}->{b}"), |o| format!("id:{o}"))
}

/// The crown poset whose Hasse diagram is a hexagonal zigzag: x0, x2, x4
/// sit below and each is covered by its two cyclic neighbours among
/// x1, x3, x5.
pub fn hexagon_poset() -> Arc<FinCategory> {
    thin(
        &["x0", "x1", "x2", "x3", "x4", "x5"],
        |x, y| x % 2 == 0 && y % 2 == 1 && (y == (x + 1) % 6 || y == (x + 5) % 6),
        |a, b| format!("{a}->{b}"),
        |o| format!("id:{o}"),
    )
}

/// The fixed-point-free automorphism rotating the hexagon by two steps.
pub fn hexagon_rotation(c: &Arc<FinCategory>) -> Functor {
    let om: Vec<usize> = (0..6)
        .map(|i| c.object_index(&format!("x{}", (i + 2) % 6)).expect("hexagon object"))
        .collect();
    thin_endofunctor(c, om)
}

fn intersection_square_base() -> Arc<FinCategory> {
    // W ⊆ U ⊆ X and W ⊆ V ⊆ X; W plays the role of U ∩ V
    let name = |a: &str, b: &str| -> String {
        match (a, b) {
            ("U", "X") => "u".into(),
            ("V", "X") => "v".into(),
            ("W", "X") => "w".into(),
            ("W", "U") => "wu".into(),
            ("W", "V") => "wv".into(),
            _ => unreachable!("no other arrows"),
        }
    };
    thin(
        &["U", "V", "W", "X"],
        |x, y| {
            let (a, b) = (["U", "V", "W", "X"][x], ["U", "V", "W", "X"][y]);
            matches!((a, b), ("U", "X") | ("V", "X") | ("W", "X") | ("W", "U") | ("W", "V"))
        },
        name,
        |o| format!("id:{o}"),
    )
}

fn intersection_square_covers() -> BTreeMap<String, Vec<Vec<String>>> {
    let s = |v: &[&str]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
    BTreeMap::from([
        ("X".to_string(), vec![s(&["id:X"]), s(&["u", "v"]), s(&["u", "v", "w"])]),
        ("U".to_string(), vec![s(&["id:U"]), s(&["id:U", "wu"])]),
        ("V".to_string(), vec![s(&["id:V"]), s(&["id:V", "wv"])]),
        ("W".to_string(), vec![s(&["id:W"])]),
    ])
}

/// A contractible-space-shaped site: opens X ⊇ U, V with connected
/// intersection W, covered by {U, V}.
pub fn contractible_site() -> Pretopology {
    Pretopology { base: intersection_square_base(), covers: intersection_square_covers() }
}

/// The same underlying site shape read as the minimal circle: U and V are
/// two arcs whose intersection W has two connected components (recorded by
/// the components presheaf, not by the index category).
pub fn pseudocircle_site() -> Pretopology {
    Pretopology { base: intersection_square_base(), covers: intersection_square_covers() }
}

/// The arc-swapping automorphism of the circle site: X, W fixed, U ↔ V.
pub fn pseudocircle_swap(c: &Arc<FinCategory>) -> Functor {
    let oi = |id: &str| c.object_index(id).expect("pseudocircle object");
    let mut om = vec![0usize; 4];
    om[oi("X")] = oi("X");
    om[oi("W")] = oi("W");
    om[oi("U")] = oi("V");
    om[oi("V")] = oi("U");
    thin_endofunctor(c, om)
}

/// The presheaf of Z/2-valued locally constant functions on the circle:
/// Z/2 on X, U, V and Z/2 ⊕ Z/2 on the two-component intersection W, with
/// diagonal restrictions into W.
pub fn pseudocircle_components_presheaf() -> Presheaf {
    let site = pseudocircle_site();
    let c = site.base.clone();
    let z2 = PresentedAbGroup::cyclic(2);
    let z2sq = z2.direct_sum(&z2);
    let values = BTreeMap::from([
        ("X".to_string(), z2.clone()),
        ("U".to_string(), z2.clone()),
        ("V".to_string(), z2.clone()),
        ("W".to_string(), z2sq.clone()),
    ]);
    let one = IntMatrix::from_rows(&[vec![1]]);
    let diag = IntMatrix::from_rows(&[vec![1], vec![1]]);
    let restrictions = BTreeMap::from([
        ("id:X".to_string(), AbHom::identity(&z2)),
        ("id:U".to_string(), AbHom::identity(&z2)),
        ("id:V".to_string(), AbHom::identity(&z2)),
        ("id:W".to_string(), AbHom::identity(&z2sq)),
        ("u".to_string(), AbHom::new(z2.clone(), z2.clone(), one.clone())),
        ("v".to_string(), AbHom::new(z2.clone(), z2.clone(), one)),
        ("w".to_string(), AbHom::new(z2.clone(), z2sq.clone(), diag.clone())),
        ("wu".to_string(), AbHom::new(z2.clone(), z2sq.clone(), diag.clone())),
        ("wv".to_string(), AbHom::new(z2, z2sq, diag)),
    ]);
    let _ = c;
    Presheaf { site, values, restrictions }
}

fn f2_name(m: usize, n: usize, bits: &[u8]) -> String {
    let s: String = bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
    format!("M{m}to{n}:{s}")
}

fn f2_matrices(m: usize, n: usize) -> Vec<Vec<u8>> {
    let len = m * n;
    (0..1usize << len)
        .map(|mask| (0..len).map(|k| ((mask >> k) & 1) as u8).collect())
        .collect()
}

fn f2_mul(m: usize, n: usize, k: usize, g: &[u8], f: &[u8]) -> Vec<u8> {
    // g : n → k is k×n row-major, f : m → n is n×m row-major
    let mut out = vec![0u8; k * m];
    for r in 0..k {
        for c in 0..m {
            let mut acc = 0u8;
            for t in 0..n {
                acc ^= g[r * n + t] & f[t * m + c];
            }
            out[r * m + c] = acc;
        }
    }
    out
}

fn f2_identity(n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        out[i * n + i] = 1;
    }
    out
}

/// The category of F₂-matrices on ranks 0, 1, 2 together with its
/// additive enrichment (entrywise addition, zero matrices, and biproduct
/// witnesses wherever the ranks allow).
pub fn matrix_category_z2() -> (Arc<FinCategory>, AbEnrichment) {
    const R: usize = 3; // ranks 0, 1, 2
    let mut morphisms = Vec::new();
    for m in 0..R {
        for n in 0..R {
            for bits in f2_matrices(m, n) {
                morphisms.push(RawMorphism {
                    id: f2_name(m, n, &bits),
                    dom: m.to_string(),
                    cod: n.to_string(),
                });
            }
        }
    }
    let mut composition = Vec::new();
    for m in 0..R {
        for n in 0..R {
            for k in 0..R {
                for f in f2_matrices(m, n) {
                    for g in f2_matrices(n, k) {
                        let gf = f2_mul(m, n, k, &g, &f);
                        composition.push([
                            f2_name(n, k, &g),
                            f2_name(m, n, &f),
                            f2_name(m, k, &gf),
                        ]);
                    }
                }
            }
        }
    }
    let raw = RawCategory {
        objects: (0..R).map(|r| r.to_string()).collect(),
        identities: (0..R).map(|r| (r.to_string(), f2_name(r, r, &f2_identity(r)))).collect(),
        morphisms,
        composition,
    };
    let c = FinCategory::from_raw(&raw).expect("matrix category is valid");

    let mut addition = Vec::new();
    let mut zeros = Vec::new();
    for m in 0..R {
        for n in 0..R {
            zeros.push([m.to_string(), n.to_string(), f2_name(m, n, &vec![0u8; m * n])]);
            for a in f2_matrices(m, n) {
                for b in f2_matrices(m, n) {
                    let s: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
                    addition.push([f2_name(m, n, &a), f2_name(m, n, &b), f2_name(m, n, &s)]);
                }
            }
        }
    }
    // biproduct witnesses for all rank pairs summing to at most 2: the
    // injections and projections are the block inclusion/projection
    // matrices
    let mut biproducts = Vec::new();
    for x in 0..R {
        for y in 0..R {
            let b = x + y;
            if b >= R {
                continue;
            }
            // i1 : x → b places the identity in the first x coordinates
            let mut i1 = vec![0u8; b * x];
            for r in 0..x {
                i1[r * x + r] = 1;
            }
            let mut i2 = vec![0u8; b * y];
            for r in 0..y {
                i2[(x + r) * y + r] = 1;
            }
            let mut p1 = vec![0u8; x * b];
            for r in 0..x {
                p1[r * b + r] = 1;
            }
            let mut p2 = vec![0u8; y * b];
            for r in 0..y {
                p2[r * b + (x + r)] = 1;
            }
            biproducts.push(BiproductWitness {
                left: x.to_string(),
                right: y.to_string(),
                object: b.to_string(),
                inj_left: f2_name(x, b, &i1),
                inj_right: f2_name(y, b, &i2),
                proj_left: f2_name(b, x, &p1),
                proj_right: f2_name(b, y, &p2),
            });
        }
    }
    let e = AbEnrichment { base: c.clone(), addition, zeros, biproducts };
    (c, e)
}
