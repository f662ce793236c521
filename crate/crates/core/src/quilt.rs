//! The braid action on involution triples, identification of pairs, and
//! quilt-orbit enumeration by left-first search.
//!
//! Two pairs are identified when they differ by independent point
//! relabelings of the members, by reversing the pair, or by permuting the
//! generator roles `(a, b, c)` simultaneously in both members. A quilt is
//! the closure of a pair under the braid moves, listed up to this
//! identification in left-first discovery order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{evaluate_word, Gen, GeneratorWord, InvolutionTriple};
use crate::transplant::{check_transplantable, TransplantError, TransplantablePair, Verdict};

#[derive(Debug, Error)]
pub enum QuiltError {
    #[error("seed pair is not transplantable")]
    SeedNotTransplantable,
    #[error("orbit exceeded {0} classes")]
    MaxClassesExceeded(usize),
    #[error("pair index {0} out of range; quilt {1} has {2} classes")]
    IndexOutOfRange(usize, String, usize),
    #[error(transparent)]
    Transplant(#[from] TransplantError),
}

/// The braid moves and their inverses:
/// `L: (a,b,c) -> (aba, a, c)` and `R: (a,b,c) -> (a, c, cbc)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BraidMove {
    L,
    Linv,
    R,
    Rinv,
}

impl BraidMove {
    pub const SEARCH_ORDER: [BraidMove; 4] =
        [BraidMove::L, BraidMove::R, BraidMove::Linv, BraidMove::Rinv];

    pub fn inverse(self) -> BraidMove {
        match self {
            BraidMove::L => BraidMove::Linv,
            BraidMove::Linv => BraidMove::L,
            BraidMove::R => BraidMove::Rinv,
            BraidMove::Rinv => BraidMove::R,
        }
    }
}

fn word(t: &InvolutionTriple, letters: &[Gen]) -> crate::perm::Permutation {
    evaluate_word(t, &GeneratorWord(letters.to_vec()))
}

/// Apply a braid move; the result is again an involution triple on the same
/// points and generates the same group.
pub fn braid(t: &InvolutionTriple, m: BraidMove) -> InvolutionTriple {
    use Gen::{A, B, C};
    let (a, b, c) = match m {
        BraidMove::L => (word(t, &[A, B, A]), t.a().clone(), t.c().clone()),
        BraidMove::Linv => (t.b().clone(), word(t, &[B, A, B]), t.c().clone()),
        BraidMove::R => (t.a().clone(), t.c().clone(), word(t, &[C, B, C])),
        BraidMove::Rinv => (t.a().clone(), word(t, &[B, C, B]), t.b().clone()),
    };
    InvolutionTriple::new(a, b, c).expect("braid moves preserve the involution property")
}

/// An ordered pair of triples on the same point count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriplePair {
    pub left: InvolutionTriple,
    pub right: InvolutionTriple,
}

impl TriplePair {
    pub fn new(left: InvolutionTriple, right: InvolutionTriple) -> Result<Self, TransplantError> {
        if left.n() != right.n() {
            return Err(TransplantError::SizeMismatch(left.n(), right.n()));
        }
        Ok(TriplePair { left, right })
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn reverse(&self) -> TriplePair {
        TriplePair { left: self.right.clone(), right: self.left.clone() }
    }

    pub fn role_permute(&self, roles: [Gen; 3]) -> TriplePair {
        TriplePair {
            left: self.left.role_permute(roles),
            right: self.right.role_permute(roles),
        }
    }
}

/// Precomposition acts identically on both representations.
pub fn braid_pair(p: &TriplePair, m: BraidMove) -> TriplePair {
    TriplePair { left: braid(&p.left, m), right: braid(&p.right, m) }
}

pub fn braid_pair_word(p: &TriplePair, moves: &[BraidMove]) -> TriplePair {
    moves.iter().fold(p.clone(), |q, &m| braid_pair(&q, m))
}

const ROLE_PERMS: [[Gen; 3]; 6] = {
    use Gen::{A, B, C};
    [[A, B, C], [A, C, B], [B, A, C], [B, C, A], [C, A, B], [C, B, A]]
};

/// Canonical form under member relabelings and reversal only (the braid
/// moves descend exactly to these classes).
fn rigid_canonical(p: &TriplePair) -> TriplePair {
    let cl = p.left.canonicalize().0;
    let cr = p.right.canonicalize().0;
    if (cl.encode(), cr.encode()) <= (cr.encode(), cl.encode()) {
        TriplePair { left: cl, right: cr }
    } else {
        TriplePair { left: cr, right: cl }
    }
}

/// Canonical representative under the full identification: member
/// relabelings, pair reversal, and simultaneous generator-role permutation.
fn full_canonical(p: &TriplePair) -> TriplePair {
    ROLE_PERMS
        .iter()
        .map(|&roles| rigid_canonical(&p.role_permute(roles)))
        .min_by(|x, y| {
            (x.left.encode(), x.right.encode()).cmp(&(y.left.encode(), y.right.encode()))
        })
        .expect("six role permutations")
}

fn encode_pair_key(p: &TriplePair) -> String {
    let fmt = |t: &InvolutionTriple| {
        t.encode().iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
    };
    format!("{};{};{}", p.n(), fmt(&p.left), fmt(&p.right))
}

/// Canonical key: equal keys iff the pairs are identified.
pub fn pair_class_key(p: &TriplePair) -> String {
    encode_pair_key(&full_canonical(p))
}

/// An identified pair class with its canonical representative.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairClass {
    pub left: InvolutionTriple,
    pub right: InvolutionTriple,
    pub key: String,
}

impl PairClass {
    pub fn of(p: &TriplePair) -> PairClass {
        let canon = full_canonical(p);
        let key = encode_pair_key(&canon);
        PairClass { left: canon.left, right: canon.right, key }
    }

    pub fn pair(&self) -> TriplePair {
        TriplePair { left: self.left.clone(), right: self.right.clone() }
    }
}

/// One pair class of a quilt together with its transplantability
/// certificate.
#[derive(Debug, Clone)]
pub struct QuiltClass {
    pub class: PairClass,
    pub certificate: TransplantablePair,
}

/// The braid orbit of a seed pair, listed in left-first discovery order.
#[derive(Debug, Clone)]
pub struct Quilt {
    pub name: String,
    pub classes: Vec<QuiltClass>,
}

impl Quilt {
    pub fn class_keys(&self) -> HashSet<String> {
        self.classes.iter().map(|c| c.class.key.clone()).collect()
    }
}

pub const DEFAULT_MAX_CLASSES: usize = 64;

/// Depth-first closure of the seed under the moves `(L, R, Linv, Rinv)` in
/// that order, recording a new class at first discovery.
///
/// The traversal runs over the finer classes modulo relabeling and reversal
/// only, on which braiding acts exactly; a new quilt class is recorded
/// whenever a visited fine class realizes an unseen full identification
/// key. This keeps the numbering deterministic while guaranteeing the whole
/// orbit is explored.
pub fn enumerate_quilt(
    seed: &TriplePair,
    max_classes: usize,
    rng_seed: u64,
) -> Result<Quilt, QuiltError> {
    match check_transplantable(&seed.left, &seed.right, rng_seed)? {
        Verdict::Transplantable(_) => {}
        _ => return Err(QuiltError::SeedNotTransplantable),
    }
    let mut st = Enumeration {
        classes: Vec::new(),
        full_keys: HashSet::new(),
        rigid_seen: HashSet::new(),
        rigid_cap: max_classes * 12 + 16,
        max_classes,
        rng_seed,
    };
    let start = rigid_canonical(seed);
    st.rigid_seen.insert(encode_pair_key(&start));
    st.record_class(&start)?;
    st.visit(start)?;
    Ok(Quilt { name: String::new(), classes: st.classes })
}

struct Enumeration {
    classes: Vec<QuiltClass>,
    full_keys: HashSet<String>,
    rigid_seen: HashSet<String>,
    rigid_cap: usize,
    max_classes: usize,
    rng_seed: u64,
}

impl Enumeration {
    fn visit(&mut self, pair: TriplePair) -> Result<(), QuiltError> {
        for m in BraidMove::SEARCH_ORDER {
            let next = rigid_canonical(&braid_pair(&pair, m));
            let rk = encode_pair_key(&next);
            if self.rigid_seen.contains(&rk) {
                continue;
            }
            if self.rigid_seen.len() >= self.rigid_cap {
                return Err(QuiltError::MaxClassesExceeded(self.max_classes));
            }
            self.rigid_seen.insert(rk);
            self.record_class(&next)?;
            if self.classes.len() > self.max_classes {
                return Err(QuiltError::MaxClassesExceeded(self.max_classes));
            }
            self.visit(next)?;
        }
        Ok(())
    }

    fn record_class(&mut self, pair: &TriplePair) -> Result<(), QuiltError> {
        let class = PairClass::of(pair);
        if !self.full_keys.insert(class.key.clone()) {
            return Ok(());
        }
        match check_transplantable(&class.left, &class.right, self.rng_seed)? {
            Verdict::Transplantable(cert) => {
                self.classes.push(QuiltClass { class, certificate: *cert });
                Ok(())
            }
            _ => Err(QuiltError::SeedNotTransplantable),
        }
    }
}

/// `label(q, 5)` is `"name(5)"`; indexing is 1-based.
pub fn label(q: &Quilt, i: usize) -> Result<String, QuiltError> {
    if i == 0 || i > q.classes.len() {
        return Err(QuiltError::IndexOutOfRange(i, q.name.clone(), q.classes.len()));
    }
    Ok(format!("{}({})", q.name, i))
}
