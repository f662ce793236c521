//! Seed discovery: one transplantable pair per quilt, from projective
//! spaces PG(2,2), PG(2,3), PG(3,2), PG(2,4) and from the two degree-11
//! coset actions of PSL(2,11), plus a brute-force oracle for small sizes.

pub mod brute;
pub mod gf;
pub mod projective;
pub mod psl2;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use brute::{brute_force_pairs, BruteError, BruteForceOutcome};
pub use gf::FieldError;
pub use projective::{
    build_projective_space, collineation_actions, projective_involutions, GroupElementAction,
    ProjectiveError, ProjectiveSpace,
};
pub use psl2::{psl2_coset_actions, Psl2Actions, Psl2Error};

use crate::perm::{evaluate_word, Gen, GeneratorWord, InvolutionTriple, Permutation};
use crate::quilt::{enumerate_quilt, pair_class_key, Quilt, QuiltError, TriplePair, DEFAULT_MAX_CLASSES};
use crate::transplant::{check_transplantable, TransplantError, Verdict};

#[derive(Debug, Error)]
pub enum SeedError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Psl2(#[from] Psl2Error),
    #[error(transparent)]
    Quilt(#[from] QuiltError),
    #[error(transparent)]
    Transplant(#[from] TransplantError),
    #[error("size {0} is not in the catalog (supported: 7, 11, 13, 15, 21)")]
    UnsupportedSize(usize),
    #[error("expected {expected} quilts of size {size}, found {found}")]
    MissingQuilts { size: usize, expected: usize, found: usize },
}

/// A named quilt seed, ready for `seeds.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeedPair {
    pub quilt_name: String,
    pub left: InvolutionTriple,
    pub right: InvolutionTriple,
}

impl SeedPair {
    pub fn pair(&self) -> TriplePair {
        TriplePair { left: self.left.clone(), right: self.right.clone() }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SeedSet {
    pub seeds: Vec<SeedPair>,
    pub warnings: Vec<String>,
}

/// A quilt found by a seed search, before naming.
#[derive(Debug)]
pub struct FoundQuilt {
    pub seed: TriplePair,
    pub quilt: Quilt,
}

/// Braid-invariant signature of a pair class: the multiset, over the six
/// generator-role orders, of the cycle types of the member products. Used
/// to skip already-classified candidates cheaply during surplus scans.
fn product_invariant(p: &TriplePair) -> Vec<(Vec<usize>, Vec<usize>)> {
    let role_words: [[Gen; 3]; 6] = {
        use Gen::{A, B, C};
        [[A, B, C], [A, C, B], [B, A, C], [B, C, A], [C, A, B], [C, B, A]]
    };
    let cycle_type = |t: &InvolutionTriple, w: &[Gen; 3]| -> Vec<usize> {
        let p = evaluate_word(t, &GeneratorWord(w.to_vec()));
        let mut lens: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    };
    let mut inv: Vec<(Vec<usize>, Vec<usize>)> = role_words
        .iter()
        .map(|w| {
            let tl = cycle_type(&p.left, w);
            let tr = cycle_type(&p.right, w);
            if tl <= tr {
                (tl, tr)
            } else {
                (tr, tl)
            }
        })
        .collect();
    inv.sort();
    inv
}

fn transitive_triple(
    invs: &[(Permutation, Permutation)],
    idx: (usize, usize, usize),
) -> Option<TriplePair> {
    let left = InvolutionTriple::new(
        invs[idx.0].0.clone(),
        invs[idx.1].0.clone(),
        invs[idx.2].0.clone(),
    )
    .expect("involutions on equal point counts");
    if !left.is_transitive() {
        return None;
    }
    let right = InvolutionTriple::new(
        invs[idx.0].1.clone(),
        invs[idx.1].1.clone(),
        invs[idx.2].1.clone(),
    )
    .expect("involutions on equal point counts");
    Some(TriplePair { left, right })
}

const SURPLUS_EXACT_CAP: usize = 20_000;

/// Scan involution triples `(g1, g2, g3)` with `g1` running over conjugacy
/// class representatives, classify transplantable candidates into quilts,
/// and keep scanning past `expected` quilts to report surplus orbits.
fn scan_for_quilts(
    invs: &[(Permutation, Permutation)],
    g1_reps: &[usize],
    expected: usize,
    rng_seed: u64,
    context: &str,
) -> Result<(Vec<FoundQuilt>, Vec<String>), SeedError> {
    let mut quilts: Vec<FoundQuilt> = Vec::new();
    let mut quilt_keys: Vec<HashSet<String>> = Vec::new();
    let mut quilt_invariants: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::new();
    let mut processed_keys: HashSet<String> = HashSet::new();
    let mut warnings: Vec<String> = Vec::new();
    let mut exact_checks = 0usize;
    let mut truncated = false;

    'scan: for &g1 in g1_reps {
        for g2 in 0..invs.len() {
            for g3 in 0..invs.len() {
                let Some(pair) = transitive_triple(invs, (g1, g2, g3)) else { continue };
                // Isomorphic pairs are useless and include the symmetric
                // triples whose canonical keys are expensive; screen them
                // out before touching canonical forms.
                if crate::transplant::find_permutation_isomorphism(&pair.left, &pair.right)?
                    .is_some()
                {
                    continue;
                }
                let settled = quilts.len() >= expected;
                if settled {
                    let inv = product_invariant(&pair);
                    if quilt_invariants.contains(&inv) {
                        continue;
                    }
                    if exact_checks >= SURPLUS_EXACT_CAP {
                        truncated = true;
                        break 'scan;
                    }
                    exact_checks += 1;
                }
                let key = pair_class_key(&pair);
                if !processed_keys.insert(key.clone()) {
                    continue;
                }
                if quilt_keys.iter().any(|ks| ks.contains(&key)) {
                    continue;
                }
                match check_transplantable(&pair.left, &pair.right, rng_seed)? {
                    Verdict::Transplantable(_) => {}
                    _ => continue,
                }
                let quilt = enumerate_quilt(&pair, DEFAULT_MAX_CLASSES, rng_seed)?;
                if quilts.len() >= expected {
                    warnings.push(format!(
                        "{context}: surplus quilt with {} classes beyond the {expected} expected",
                        quilt.classes.len()
                    ));
                }
                quilt_keys.push(quilt.class_keys());
                quilt_invariants.push(product_invariant(&pair));
                quilts.push(FoundQuilt { seed: pair, quilt });
            }
        }
    }
    if truncated {
        warnings.push(format!(
            "{context}: surplus scan truncated after {SURPLUS_EXACT_CAP} exact checks"
        ));
    }
    Ok((quilts, warnings))
}

fn projective_involution_actions(space: &ProjectiveSpace) -> Vec<(Permutation, Permutation)> {
    projective_involutions(space)
        .into_iter()
        .map(|a| (a.point_perm, a.hyperplane_perm))
        .collect()
}

/// Transplantable pairs found in a projective space, deduplicated by class
/// key, at most `limit` of them.
pub fn projective_seed_search(
    space: &ProjectiveSpace,
    rng_seed: u64,
    limit: usize,
) -> Result<Vec<TriplePair>, SeedError> {
    let invs = projective_involution_actions(space);
    let reps = projective::involution_class_representatives(&projective_involutions(space));
    collect_pairs(&invs, &reps, rng_seed, limit)
}

/// Transplantable degree-11 pairs from the PSL(2,11) coset actions.
pub fn psl2_seed_search(rng_seed: u64, limit: usize) -> Result<Vec<TriplePair>, SeedError> {
    let actions = psl2_coset_actions()?;
    collect_pairs(&actions.involutions, &[0], rng_seed, limit)
}

fn collect_pairs(
    invs: &[(Permutation, Permutation)],
    g1_reps: &[usize],
    rng_seed: u64,
    limit: usize,
) -> Result<Vec<TriplePair>, SeedError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &g1 in g1_reps {
        for g2 in 0..invs.len() {
            for g3 in 0..invs.len() {
                if out.len() >= limit {
                    return Ok(out);
                }
                let Some(pair) = transitive_triple(invs, (g1, g2, g3)) else { continue };
                if crate::transplant::find_permutation_isomorphism(&pair.left, &pair.right)?
                    .is_some()
                {
                    continue;
                }
                let key = pair_class_key(&pair);
                if !seen.insert(key) {
                    continue;
                }
                if let Verdict::Transplantable(_) =
                    check_transplantable(&pair.left, &pair.right, rng_seed)?
                {
                    out.push(pair);
                }
            }
        }
    }
    Ok(out)
}

fn quilts_for_size(size: usize, rng_seed: u64) -> Result<(Vec<FoundQuilt>, Vec<String>), SeedError> {
    let context = format!("size {size}");
    match size {
        7 | 13 | 15 | 21 => {
            let (d, q, expected) = match size {
                7 => (2, 2, 1),
                13 => (2, 3, 2),
                15 => (3, 2, 1),
                21 => (2, 4, 1),
                _ => unreachable!(),
            };
            let space = build_projective_space(d, q)?;
            let actions = projective_involutions(&space);
            let reps = projective::involution_class_representatives(&actions);
            let invs: Vec<(Permutation, Permutation)> =
                actions.into_iter().map(|a| (a.point_perm, a.hyperplane_perm)).collect();
            let (found, warnings) = scan_for_quilts(&invs, &reps, expected, rng_seed, &context)?;
            if found.len() < expected {
                return Err(SeedError::MissingQuilts { size, expected, found: found.len() });
            }
            Ok((found, warnings))
        }
        11 => {
            let actions = psl2_coset_actions()?;
            let (found, warnings) =
                scan_for_quilts(&actions.involutions, &[0], 4, rng_seed, &context)?;
            if found.len() < 4 {
                return Err(SeedError::MissingQuilts { size: 11, expected: 4, found: found.len() });
            }
            Ok((found, warnings))
        }
        other => Err(SeedError::UnsupportedSize(other)),
    }
}

/// Name the quilts of one size. Sizes with a single quilt use the bare
/// size. Size 13 assigns `a` to the larger orbit. Size 11 assigns the
/// historical letters by the class-count pattern f:4, g:6, h:4, i:5,
/// breaking the f/h tie by seed key; if the counts come out differently
/// the letters fall back to descending count order with a warning.
fn assign_names(size: usize, mut found: Vec<FoundQuilt>, warnings: &mut Vec<String>) -> Vec<FoundQuilt> {
    let sort_key = |f: &FoundQuilt| {
        let key = f.quilt.classes.first().map(|c| c.class.key.clone()).unwrap_or_default();
        (std::cmp::Reverse(f.quilt.classes.len()), key)
    };
    found.sort_by_key(sort_key);
    let counts: Vec<usize> = found.iter().map(|f| f.quilt.classes.len()).collect();
    match (size, counts.as_slice()) {
        (11, [6, 5, 4, 4]) => {
            // Descending order is g, i, then the two 4-class quilts f, h.
            let names = ["11g", "11i", "11f", "11h"];
            for (f, name) in found.iter_mut().zip(names) {
                f.quilt.name = name.to_string();
            }
        }
        (11, _) => {
            warnings.push(format!(
                "size 11: class counts {counts:?} do not match the expected {{4, 6, 4, 5}}; lettering by size"
            ));
            for (f, letter) in found.iter_mut().zip(["f", "g", "h", "i"]) {
                f.quilt.name = format!("11{letter}");
            }
        }
        (13, _) => {
            if counts != [5, 4] {
                warnings.push(format!(
                    "size 13: class counts {counts:?} do not match the expected [5, 4]"
                ));
            }
            for (f, letter) in found.iter_mut().zip(["a", "b"]) {
                f.quilt.name = format!("13{letter}");
            }
        }
        _ => {
            for (i, f) in found.iter_mut().enumerate() {
                f.quilt.name = if i == 0 {
                    size.to_string()
                } else {
                    format!("{size}-surplus-{i}")
                };
            }
        }
    }
    found.sort_by(|x, y| x.quilt.name.cmp(&y.quilt.name));
    found
}

/// Discover, enumerate, and name every quilt for the requested sizes.
pub fn discover_quilts(sizes: &[usize], rng_seed: u64) -> Result<(Vec<FoundQuilt>, Vec<String>), SeedError> {
    let mut sizes: Vec<usize> = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut all = Vec::new();
    let mut warnings = Vec::new();
    for size in sizes {
        let (found, mut w) = quilts_for_size(size, rng_seed)?;
        warnings.append(&mut w);
        let named = assign_names(size, found, &mut warnings);
        all.extend(named);
    }
    Ok((all, warnings))
}

/// One seed pair per quilt, in canonical name order.
pub fn catalog_seeds(sizes: &[usize], rng_seed: u64) -> Result<SeedSet, SeedError> {
    let (found, warnings) = discover_quilts(sizes, rng_seed)?;
    let mut by_name: BTreeMap<(usize, String), SeedPair> = BTreeMap::new();
    for f in found {
        if f.quilt.name.contains("surplus") {
            continue;
        }
        by_name.insert(
            (f.seed.n(), f.quilt.name.clone()),
            SeedPair {
                quilt_name: f.quilt.name.clone(),
                left: f.seed.left,
                right: f.seed.right,
            },
        );
    }
    Ok(SeedSet { seeds: by_name.into_values().collect(), warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_search_finds_a_transplantable_pair() {
        let space = build_projective_space(2, 2).unwrap();
        let pairs = projective_seed_search(&space, crate::DEFAULT_RNG_SEED, 1).unwrap();
        assert_eq!(pairs.len(), 1);
        let p = &pairs[0];
        assert!(matches!(
            check_transplantable(&p.left, &p.right, crate::DEFAULT_RNG_SEED).unwrap(),
            Verdict::Transplantable(_)
        ));
    }

    #[test]
    fn unsupported_size_is_rejected() {
        assert!(matches!(
            quilts_for_size(9, 0),
            Err(SeedError::UnsupportedSize(9))
        ));
    }
}
