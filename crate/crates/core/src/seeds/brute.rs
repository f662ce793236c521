//! Exhaustive discovery of transplantable pairs at small sizes, as an
//! independent oracle for the constructed seeds.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::perm::{InvolutionTriple, Permutation};
use crate::quilt::{PairClass, TriplePair};
use crate::transplant::{check_transplantable, fingerprint, Verdict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruteError {
    #[error("n = {0} exceeds the complexity guard (8); pass the override to run anyway")]
    TooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct BruteForceOutcome {
    pub pairs: Vec<PairClass>,
    /// False when the node budget ran out before the search finished; the
    /// pair list is then a lower bound, never a completed enumeration.
    pub completed: bool,
}

/// All involutions on `n` points, enumerated by deciding the fate of the
/// smallest undecided point.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn rec(img: &mut Vec<usize>, decided: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = img.len();
        let Some(i) = (0..n).find(|&k| !decided[k]) else {
            out.push(Permutation::from_images(img.clone()).unwrap());
            return;
        };
        decided[i] = true;
        rec(img, decided, out);
        for j in i + 1..n {
            if !decided[j] {
                decided[j] = true;
                img[i] = j;
                img[j] = i;
                rec(img, decided, out);
                img[i] = i;
                img[j] = j;
                decided[j] = false;
            }
        }
        decided[i] = false;
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut vec![false; n], &mut out);
    out
}

/// Canonical involution with `m` 2-cycles: `(1 2)(3 4)...`.
fn matching_rep(n: usize, m: usize) -> Permutation {
    let mut img: Vec<usize> = (0..n).collect();
    for k in 0..m {
        img[2 * k] = 2 * k + 1;
        img[2 * k + 1] = 2 * k;
    }
    Permutation::from_images(img).unwrap()
}

/// Enumerate transitive involution triples up to conjugacy, bucket by
/// fingerprint, and verify candidate pairs exactly. Returns the distinct
/// identified pair classes, sorted by key.
pub fn brute_force_pairs(
    n: usize,
    allow_large: bool,
    node_budget: usize,
) -> Result<BruteForceOutcome, BruteError> {
    if n > 8 && !allow_large {
        return Err(BruteError::TooLarge(n));
    }
    let invs = involutions(n);
    let mut budget = node_budget;
    let mut classes: HashSet<Vec<usize>> = HashSet::new();
    let mut reps: Vec<InvolutionTriple> = Vec::new();
    let mut completed = true;
    'outer: for m in 0..=n / 2 {
        let a = matching_rep(n, m);
        for b in &invs {
            for c in &invs {
                if budget == 0 {
                    completed = false;
                    break 'outer;
                }
                budget -= 1;
                let t = InvolutionTriple::new(a.clone(), b.clone(), c.clone()).unwrap();
                if !t.is_transitive() {
                    continue;
                }
                let canon = t.canonicalize().0;
                if classes.insert(canon.encode()) {
                    reps.push(canon);
                }
            }
        }
    }
    // Pair candidates must share the fingerprint.
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (idx, t) in reps.iter().enumerate() {
        buckets.entry(fingerprint(t, 6).counts).or_default().push(idx);
    }
    let mut found: HashMap<String, PairClass> = HashMap::new();
    for bucket in buckets.values() {
        for (pos, &i) in bucket.iter().enumerate() {
            for &j in &bucket[pos + 1..] {
                if budget == 0 {
                    completed = false;
                    break;
                }
                budget -= 1;
                let pair = TriplePair::new(reps[i].clone(), reps[j].clone()).unwrap();
                if let Ok(Verdict::Transplantable(_)) =
                    check_transplantable(&pair.left, &pair.right, crate::DEFAULT_RNG_SEED)
                {
                    let class = PairClass::of(&pair);
                    found.entry(class.key.clone()).or_insert(class);
                }
            }
        }
    }
    let mut pairs: Vec<PairClass> = found.into_values().collect();
    pairs.sort_by(|x, y| x.key.cmp(&y.key));
    Ok(BruteForceOutcome { pairs, completed })
}
