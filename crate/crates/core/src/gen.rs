//! Seeded generators: exhaustive endofunctor enumeration, random posets,
//! monoids and matrices, and conjugated (naturally isomorphic) functor
//! pairs. Everything is deterministic in the seed.

use crate::abgrp::IntMatrix;
use crate::fincat::{FinCategory, Functor, NatTransformation, RawCategory, RawMorphism};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Every endofunctor of a finite category, by exhaustive search over
/// object maps and hom-respecting morphism maps. Intended for small
/// fixtures only.
pub fn all_endofunctors(c: &Arc<FinCategory>) -> Vec<Functor> {
    let n_obj = c.object_count();
    let n_mor = c.morphism_count();
    let mut out = Vec::new();
    if n_obj == 0 {
        if let Ok(f) = Functor::from_indices(c.clone(), c.clone(), vec![], vec![]) {
            out.push(f);
        }
        return out;
    }
    let mut om = vec![0usize; n_obj];
    loop {
        // candidate images per morphism under this object map
        let candidates: Vec<Vec<usize>> = (0..n_mor)
            .map(|m| {
                if c.is_identity(m) {
                    vec![c.identity(om[c.dom(m)])]
                } else {
                    c.hom(om[c.dom(m)], om[c.cod(m)])
                }
            })
            .collect();
        if candidates.iter().all(|cs| !cs.is_empty()) {
            let mut pick = vec![0usize; n_mor];
            'mm: loop {
                let mm: Vec<usize> = (0..n_mor).map(|m| candidates[m][pick[m]]).collect();
                if let Ok(f) = Functor::from_indices(c.clone(), c.clone(), om.clone(), mm) {
                    out.push(f);
                }
                let mut k = 0;
                loop {
                    if k == n_mor {
                        break 'mm;
                    }
                    pick[k] += 1;
                    if pick[k] < candidates[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
            }
        }
        // advance the object map
        let mut k = 0;
        loop {
            if k == n_obj {
                return out;
            }
            om[k] += 1;
            if om[k] < n_obj {
                break;
            }
            om[k] = 0;
            k += 1;
        }
    }
}

/// A random poset category on 2–5 objects: a random DAG on the index
/// order, transitively closed.
pub fn random_poset(seed: u64) -> Arc<FinCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=5);
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                le[i][j] = true;
            }
        }
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut morphisms = Vec::new();
    let mor_name = |x: usize, y: usize| {
        if x == y {
            format!("id:{}", names[x])
        } else {
            format!("{}->{}", names[x], names[y])
        }
    };
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || le[x][y] {
                morphisms.push(RawMorphism {
                    id: mor_name(x, y),
                    dom: names[x].clone(),
                    cod: names[y].clone(),
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
        objects: names.clone(),
        identities: names.iter().map(|o| (o.clone(), format!("id:{o}"))).collect(),
        morphisms,
        composition,
    };
    FinCategory::from_raw(&raw).expect("transitively closed DAG is a category")
}

/// A random one-object category: Z/n for n in 1..=5, or the commutative
/// idempotent monoid min(·,·) on {0, …, k} with top identity.
pub fn random_monoid(seed: u64) -> Arc<FinCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_bool(0.5) {
        crate::stdcats::cyclic_group_category(rng.gen_range(1..=5))
    } else {
        let k = rng.gen_range(1..=4usize);
        let g = |i: usize| format!("e{i}");
        let morphisms = (0..=k)
            .map(|i| RawMorphism { id: g(i), dom: "*".into(), cod: "*".into() })
            .collect();
        let mut composition = Vec::new();
        for i in 0..=k {
            for j in 0..=k {
                composition.push([g(i), g(j), g(i.min(j))]);
            }
        }
        let raw = RawCategory {
            objects: vec!["*".into()],
            identities: BTreeMap::from([("*".into(), g(k))]),
            morphisms,
            composition,
        };
        FinCategory::from_raw(&raw).expect("min monoid is associative")
    }
}

/// A random loop-free category (here: a random poset, which has no
/// non-identity endomorphisms by construction).
pub fn random_loop_free(seed: u64) -> Arc<FinCategory> {
    random_poset(seed)
}

/// A random small category drawn from the generator families.
pub fn random_category(seed: u64) -> Arc<FinCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    match rng.gen_range(0..4) {
        0 => random_poset(seed),
        1 => random_monoid(seed),
        2 => crate::stdcats::discrete(rng.gen_range(1..=4)),
        _ => crate::stdcats::codiscrete_groupoid(rng.gen_range(1..=3)),
    }
}

/// A random endofunctor of `c`, uniform over the exhaustive enumeration.
pub fn random_endofunctor(c: &Arc<FinCategory>, seed: u64) -> Functor {
    let all = all_endofunctors(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = rng.gen_range(0..all.len());
    all.into_iter().nth(i).expect("identity endofunctor always exists")
}

/// Conjugates `f` by a random choice of isomorphisms η_X out of each
/// F(X): G(X) = cod η_X and G(m) = η_Y ∘ F(m) ∘ η_X⁻¹. Returns the pair
/// (G, η : F ⇒ G); η is a natural isomorphism by construction.
pub fn conjugate_pair(f: &Functor, seed: u64) -> (Functor, NatTransformation) {
    let c = &f.source;
    assert!(f.is_endofunctor(), "conjugation is defined for endofunctors");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_obj = c.object_count();
    let mut eta = Vec::with_capacity(n_obj);
    let mut gom = Vec::with_capacity(n_obj);
    for x in 0..n_obj {
        let fx = f.obj(x);
        let isos: Vec<usize> =
            (0..c.morphism_count()).filter(|&m| c.dom(m) == fx && c.is_iso(m)).collect();
        let pick = isos[rng.gen_range(0..isos.len())];
        eta.push(pick);
        gom.push(c.cod(pick));
    }
    let gmm: Vec<usize> = (0..c.morphism_count())
        .map(|m| {
            let (x, y) = (c.dom(m), c.cod(m));
            let inv = c.inverse(eta[x]).expect("η components are isomorphisms");
            c.compose(eta[y], c.compose(f.mor(m), inv).expect("conjugation composes"))
                .expect("conjugation composes")
        })
        .collect();
    let g = Functor::from_indices(c.clone(), c.clone(), gom, gmm)
        .expect("a conjugate of a functor is a functor");
    let t = NatTransformation::from_indices(f.clone(), g.clone(), eta)
        .expect("conjugating components are natural");
    (g, t)
}

/// A random integer matrix with entries in [−bound, bound].
pub fn random_matrix(seed: u64, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, BigInt::from(rng.gen_range(-bound..=bound)));
        }
    }
    m
}

/// Independent brute-force re-check of the category laws, used as an
/// oracle against the construction-time validation.
pub fn brute_force_laws_hold(c: &FinCategory) -> bool {
    let n = c.morphism_count();
    for f in 0..n {
        let x = c.dom(f);
        let y = c.cod(f);
        if c.compose(f, c.identity(x)) != Some(f) || c.compose(c.identity(y), f) != Some(f) {
            return false;
        }
    }
    for f in 0..n {
        for g in 0..n {
            if c.cod(f) != c.dom(g) {
                if c.compose(g, f).is_some() {
                    return false;
                }
                continue;
            }
            let Some(gf) = c.compose(g, f) else { return false };
            if c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g) {
                return false;
            }
            for h in 0..n {
                if c.dom(h) != c.cod(g) {
                    continue;
                }
                let hg = c.compose(h, g).unwrap();
                if c.compose(h, gf) != c.compose(hg, f) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdcats;

    #[test]
    fn monotone_map_counts() {
        // monotone self-maps of an n-chain number C(2n−1, n)
        assert_eq!(all_endofunctors(&stdcats::chain_poset(2)).len(), 3);
        assert_eq!(all_endofunctors(&stdcats::chain_poset(3)).len(), 10);
        // endofunctors of a discrete category are the object self-maps
        assert_eq!(all_endofunctors(&stdcats::discrete(3)).len(), 27);
        // group endomorphisms of Z/4: one per choice of generator image
        assert_eq!(all_endofunctors(&stdcats::cyclic_group_category(4)).len(), 4);
    }

    #[test]
    fn random_families_validate_against_brute_force() {
        for seed in 0..25u64 {
            let c = random_category(seed);
            assert!(brute_force_laws_hold(&c), "seed {seed}");
            assert!(c.morphism_count() <= 25);
            assert!(c.object_count() <= 5);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        for seed in [0u64, 7, 42] {
            assert_eq!(random_category(seed).to_raw(), random_category(seed).to_raw());
            let m1 = random_matrix(seed, 3, 4, 9);
            let m2 = random_matrix(seed, 3, 4, 9);
            assert_eq!(m1, m2);
        }
    }

    #[test]
    fn conjugate_pairs_are_naturally_isomorphic() {
        let g = stdcats::codiscrete_groupoid(3);
        let id = Functor::identity(g.clone());
        for seed in 0..5u64 {
            let (gf, eta) = conjugate_pair(&id, seed);
            assert!(eta.is_nat_iso());
            assert!(gf.is_endofunctor()); // construction already validated the laws
        }
        let z = stdcats::cyclic_group_category(3);
        let id = Functor::identity(z.clone());
        let (gf, eta) = conjugate_pair(&id, 1);
        assert!(eta.is_nat_iso());
        // conjugation in an abelian group fixes the functor
        assert_eq!(gf, id);
    }
}
