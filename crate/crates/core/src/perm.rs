//! Permutations on `n` points, involution triples, word evaluation, orbits,
//! and canonical relabeling.
//!
//! Composition is left-to-right throughout: `p.compose(&q)` applies `p`
//! first, then `q`. Points are 0-based internally and 1-based in all cycle
//! notation and JSON.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("point {point} out of range 1..={n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("repeated point {0} in cycle notation")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("generator {0} is not an involution")]
    NotInvolution(char),
    #[error("point counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// A permutation of `{0, .., n-1}` stored by its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self, PermError> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &j in &img {
            if j >= n || seen[j] {
                return Err(PermError::NotBijection);
            }
            seen[j] = true;
        }
        Ok(Permutation { img })
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "compose needs equal point counts");
        Permutation { img: self.img.iter().map(|&j| other.img[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0; self.n()];
        for (i, &j) in self.img.iter().enumerate() {
            img[j] = i;
        }
        Permutation { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| self.img[j] == i)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.img[i] == i).collect()
    }

    pub fn count_fixed(&self) -> usize {
        (0..self.n()).filter(|&i| self.img[i] == i).count()
    }

    /// The 2-cycles `(i, j)` with `i < j` of an involution.
    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        debug_assert!(self.is_involution());
        (0..self.n()).filter(|&i| self.img[i] > i).map(|i| (i, self.img[i])).collect()
    }

    /// Disjoint cycles of length >= 2, each rotated to start at its least
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.img[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.img[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Parse whitespace-insensitive disjoint-cycle notation, e.g. `"(1 2)(3 4)"`.
    /// `""` and `"()"` denote the identity; points are 1-based.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, PermError> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut chars = text.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => return Err(PermError::Malformed(format!("unexpected '{c}'"))),
            }
            let mut cyc: Vec<usize> = Vec::new();
            let mut num = String::new();
            loop {
                match chars.next() {
                    Some(c) if c.is_ascii_digit() => num.push(c),
                    Some(c) if c.is_whitespace() || c == ',' => {
                        if !num.is_empty() {
                            cyc.push(parse_point(&num, n)?);
                            num.clear();
                        }
                    }
                    Some(')') => {
                        if !num.is_empty() {
                            cyc.push(parse_point(&num, n)?);
                        }
                        break;
                    }
                    Some(c) => return Err(PermError::Malformed(format!("unexpected '{c}'"))),
                    None => return Err(PermError::Malformed("unclosed '('".into())),
                }
            }
            for &p in &cyc {
                if used[p] {
                    return Err(PermError::RepeatedPoint(p + 1));
                }
                used[p] = true;
            }
            for (idx, &p) in cyc.iter().enumerate() {
                img[p] = cyc[(idx + 1) % cyc.len()];
            }
        }
        Ok(Permutation { img })
    }

    /// Inverse of [`Permutation::parse_cycles`]: `"()"` for the identity.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for cyc in cycles {
            s.push('(');
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }

    /// The permutation `q` with `q(sigma(i)) = sigma(p(i))`: `p` rewritten in
    /// the labels assigned by `sigma`.
    pub fn relabel(&self, sigma: &Permutation) -> Permutation {
        assert_eq!(self.n(), sigma.n());
        let mut img = vec![0; self.n()];
        for i in 0..self.n() {
            img[sigma.img[i]] = sigma.img[self.img[i]];
        }
        Permutation { img }
    }
}

fn parse_point(num: &str, n: usize) -> Result<usize, PermError> {
    let v: usize = num.parse().map_err(|_| PermError::Malformed(format!("bad number '{num}'")))?;
    if v == 0 || v > n {
        return Err(PermError::PointOutOfRange { point: v, n });
    }
    Ok(v - 1)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

/// One of the three involutive generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    C,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::A, Gen::B, Gen::C];

    pub fn index(self) -> usize {
        match self {
            Gen::A => 0,
            Gen::B => 1,
            Gen::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Gen {
        Gen::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
        }
    }
}

/// A word over `{a, b, c}`; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord(pub Vec<Gen>);

impl GeneratorWord {
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let mut letters = Vec::new();
        for c in text.chars() {
            match c {
                'a' => letters.push(Gen::A),
                'b' => letters.push(Gen::B),
                'c' => letters.push(Gen::C),
                c if c.is_whitespace() => {}
                c => return Err(PermError::Malformed(format!("bad generator '{c}'"))),
            }
        }
        Ok(GeneratorWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{}", g.letter())?;
        }
        Ok(())
    }
}

/// All words with no letter repeated consecutively, of length `0..=max_len`,
/// ordered by length then lexicographically with `a < b < c`.
pub fn reduced_words(max_len: usize) -> Vec<GeneratorWord> {
    let mut out = vec![GeneratorWord::default()];
    let mut level: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for g in Gen::ALL {
                if w.last() != Some(&g) {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
        }
        out.extend(next.iter().cloned().map(GeneratorWord));
        level = next;
    }
    out
}

/// Three involutions on the same `n` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvolutionTriple {
    n: usize,
    gens: [Permutation; 3],
}

impl InvolutionTriple {
    pub fn new(a: Permutation, b: Permutation, c: Permutation) -> Result<Self, PermError> {
        let n = a.n();
        if b.n() != n {
            return Err(PermError::SizeMismatch(n, b.n()));
        }
        if c.n() != n {
            return Err(PermError::SizeMismatch(n, c.n()));
        }
        for (p, name) in [(&a, 'a'), (&b, 'b'), (&c, 'c')] {
            if !p.is_involution() {
                return Err(PermError::NotInvolution(name));
            }
        }
        Ok(InvolutionTriple { n, gens: [a, b, c] })
    }

    /// Parse the three generators from cycle notation.
    pub fn from_cycles(n: usize, a: &str, b: &str, c: &str) -> Result<Self, PermError> {
        InvolutionTriple::new(
            Permutation::parse_cycles(a, n)?,
            Permutation::parse_cycles(b, n)?,
            Permutation::parse_cycles(c, n)?,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gen(&self, g: Gen) -> &Permutation {
        &self.gens[g.index()]
    }

    pub fn a(&self) -> &Permutation {
        &self.gens[0]
    }

    pub fn b(&self) -> &Permutation {
        &self.gens[1]
    }

    pub fn c(&self) -> &Permutation {
        &self.gens[2]
    }

    pub fn relabel(&self, sigma: &Permutation) -> InvolutionTriple {
        InvolutionTriple {
            n: self.n,
            gens: [
                self.gens[0].relabel(sigma),
                self.gens[1].relabel(sigma),
                self.gens[2].relabel(sigma),
            ],
        }
    }

    /// Reinterpret the abstract generators: the new `(a, b, c)` are the old
    /// generators at positions `roles`.
    pub fn role_permute(&self, roles: [Gen; 3]) -> InvolutionTriple {
        InvolutionTriple {
            n: self.n,
            gens: [
                self.gens[roles[0].index()].clone(),
                self.gens[roles[1].index()].clone(),
                self.gens[roles[2].index()].clone(),
            ],
        }
    }

    /// Concatenated image sequences of `a`, `b`, `c`; the comparison key for
    /// canonical forms.
    pub fn encode(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(3 * self.n);
        for g in &self.gens {
            v.extend_from_slice(g.images());
        }
        v
    }

    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for g in &self.gens {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.n > 0 && self.orbit_partition().len() == 1
    }

    /// The lexicographically minimal relabeling of this triple, minimizing
    /// [`InvolutionTriple::encode`], together with the relabeling `sigma`
    /// such that `self.relabel(&sigma)` equals the canonical form.
    pub fn canonicalize(&self) -> (InvolutionTriple, Permutation) {
        let mut search = CanonSearch::new(self);
        search.run();
        let sigma = search.finish_sigma();
        let canon = self.relabel(&sigma);
        debug_assert_eq!(canon.encode(), search.best.expect("canonical search found a labeling"));
        (canon, sigma)
    }
}

pub fn evaluate_word(t: &InvolutionTriple, w: &GeneratorWord) -> Permutation {
    let mut img: Vec<usize> = (0..t.n()).collect();
    for p in img.iter_mut() {
        for &g in &w.0 {
            *p = t.gen(g).apply(*p);
        }
    }
    Permutation { img }
}

/// Branch-and-bound search for the relabeling minimizing the concatenated
/// image sequences. Labels are assigned lazily while scanning the 3n string
/// positions in order; branching only happens where the next entry genuinely
/// depends on which point receives the current label.
struct CanonSearch<'a> {
    t: &'a InvolutionTriple,
    n: usize,
    old2new: Vec<Option<usize>>,
    new2old: Vec<Option<usize>>,
    cur: Vec<usize>,
    best: Option<Vec<usize>>,
    best_sigma: Vec<Option<usize>>,
    isolated: Vec<bool>,
}

impl<'a> CanonSearch<'a> {
    fn new(t: &'a InvolutionTriple) -> Self {
        let n = t.n();
        let isolated = (0..n)
            .map(|p| t.gens.iter().all(|g| g.apply(p) == p))
            .collect();
        CanonSearch {
            t,
            n,
            old2new: vec![None; n],
            new2old: vec![None; n],
            cur: Vec::with_capacity(3 * n),
            best: None,
            best_sigma: vec![None; n],
            isolated,
        }
    }

    fn run(&mut self) {
        self.descend(0, true);
    }

    fn smallest_free_label(&self, skip: Option<usize>) -> usize {
        (0..self.n)
            .find(|&l| self.new2old[l].is_none() && Some(l) != skip)
            .expect("a free label exists")
    }

    /// Returns true if the best string was replaced somewhere in this subtree.
    fn descend(&mut self, pos: usize, tight: bool) -> bool {
        if pos == 3 * self.n {
            // Complete: strictly better (tight means equal to best).
            if !tight || self.best.is_none() {
                self.best = Some(self.cur.clone());
                self.best_sigma = self.old2new.clone();
                return true;
            }
            return false;
        }
        let gen = &self.t.gens[pos / self.n];
        let label = pos % self.n;
        match self.new2old[label] {
            Some(p) => {
                let q = gen.apply(p);
                match self.old2new[q] {
                    Some(v) => self.emit(pos, tight, v, None),
                    None => {
                        // Forced: give q the smallest free label now.
                        let v = self.smallest_free_label(None);
                        self.emit(pos, tight, v, Some((q, v)))
                    }
                }
            }
            None => {
                // The point receiving this label is still free. If every
                // free point is fixed by `gen`, the entry equals `label`
                // regardless of the choice: defer the assignment.
                let free: Vec<usize> = (0..self.n).filter(|&p| self.old2new[p].is_none()).collect();
                if free.iter().all(|&p| gen.apply(p) == p) {
                    return self.emit(pos, tight, label, None);
                }
                // Candidates ordered by the string entry they produce.
                let mut cands: Vec<(usize, usize, Option<usize>)> = Vec::new();
                let mut isolated_tried = false;
                for &p in &free {
                    if self.isolated[p] {
                        if isolated_tried {
                            continue;
                        }
                        isolated_tried = true;
                    }
                    let q = gen.apply(p);
                    if q == p {
                        cands.push((label, p, None));
                    } else if let Some(v) = self.old2new[q] {
                        cands.push((v, p, None));
                    } else {
                        // p takes `label`; its partner then takes the
                        // smallest label free after that.
                        let v = self.smallest_free_label(Some(label));
                        cands.push((v, p, Some(q)));
                    }
                }
                cands.sort_unstable();
                let mut tight = tight;
                let mut updated = false;
                for (v, p, partner) in cands {
                    self.old2new[p] = Some(label);
                    self.new2old[label] = Some(p);
                    let assign = partner.map(|q| (q, v));
                    if self.emit(pos, tight, v, assign) {
                        updated = true;
                        tight = true;
                    }
                    self.old2new[p] = None;
                    self.new2old[label] = None;
                }
                updated
            }
        }
    }

    fn emit(&mut self, pos: usize, tight: bool, v: usize, assign: Option<(usize, usize)>) -> bool {
        let mut tight = tight;
        if tight {
            if let Some(best) = &self.best {
                if v > best[pos] {
                    return false;
                }
                if v < best[pos] {
                    tight = false;
                }
            }
        }
        if let Some((q, l)) = assign {
            self.old2new[q] = Some(l);
            self.new2old[l] = Some(q);
        }
        self.cur.push(v);
        let updated = self.descend(pos + 1, tight);
        self.cur.pop();
        if let Some((q, _)) = assign {
            let l = self.old2new[q].take().expect("assigned above");
            self.new2old[l] = None;
        }
        updated
    }

    fn finish_sigma(&mut self) -> Permutation {
        // Points never forced during the winning search get the remaining
        // labels in increasing order; their entries were choice-independent.
        let mut sigma = self.best_sigma.clone();
        let mut free_labels: Vec<usize> =
            (0..self.n).filter(|&l| !sigma.iter().flatten().any(|&x| x == l)).collect();
        free_labels.sort_unstable();
        let mut it = free_labels.into_iter();
        for s in sigma.iter_mut() {
            if s.is_none() {
                *s = Some(it.next().expect("label count matches"));
            }
        }
        Permutation { img: sigma.into_iter().map(|s| s.expect("filled")).collect() }
    }
}

// JSON form of a triple: {"n": 3, "a": "(1 2)", "b": "()", "c": "(1 3)"}.
#[derive(Serialize, Deserialize)]
struct TripleJson {
    n: usize,
    a: String,
    b: String,
    c: String,
}

impl Serialize for InvolutionTriple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TripleJson {
            n: self.n,
            a: self.a().format_cycles(),
            b: self.b().format_cycles(),
            c: self.c().format_cycles(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InvolutionTriple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = TripleJson::deserialize(deserializer)?;
        InvolutionTriple::from_cycles(j.n, &j.a, &j.b, &j.c).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn triple(n: usize, a: &str, b: &str, c: &str) -> InvolutionTriple {
        InvolutionTriple::from_cycles(n, a, b, c).unwrap()
    }

    #[test]
    fn parse_two_cycle() {
        assert_eq!(perm("(1 2)", 3).images(), &[1, 0, 2]);
    }

    #[test]
    fn parse_identity_forms() {
        assert!(perm("", 5).is_identity());
        assert!(perm("()", 5).is_identity());
    }

    #[test]
    fn parse_rejects_repeated_point() {
        assert_eq!(
            Permutation::parse_cycles("(1 2)(2 3)", 3).unwrap_err(),
            PermError::RepeatedPoint(2)
        );
    }

    #[test]
    fn parse_rejects_out_of_range_and_malformed() {
        assert_eq!(
            Permutation::parse_cycles("(1 4)", 3).unwrap_err(),
            PermError::PointOutOfRange { point: 4, n: 3 }
        );
        assert!(matches!(
            Permutation::parse_cycles("(1 2", 3).unwrap_err(),
            PermError::Malformed(_)
        ));
        assert!(matches!(
            Permutation::parse_cycles("1 2)", 3).unwrap_err(),
            PermError::Malformed(_)
        ));
    }

    #[test]
    fn evaluate_word_trivial_b() {
        let t = triple(2, "(1 2)", "", "");
        let w = GeneratorWord::parse("ab").unwrap();
        assert_eq!(evaluate_word(&t, &w), perm("(1 2)", 2));
        let w = GeneratorWord::parse("aa").unwrap();
        assert!(evaluate_word(&t, &w).is_identity());
    }

    #[test]
    fn evaluate_word_abc_left_to_right() {
        // Composing (1 2), then (2 3), then (1 3) by hand sends
        // 1 -> 1, 2 -> 3, 3 -> 2.
        let t = triple(3, "(1 2)", "(2 3)", "(1 3)");
        let w = GeneratorWord::parse("abc").unwrap();
        assert_eq!(evaluate_word(&t, &w), perm("(2 3)", 3));
    }

    #[test]
    fn orbit_partition_examples() {
        let t = triple(3, "", "", "");
        assert_eq!(t.orbit_partition(), vec![vec![0], vec![1], vec![2]]);
        let t = triple(3, "(1 2)", "(2 3)", "");
        assert_eq!(t.orbit_partition(), vec![vec![0, 1, 2]]);
        assert!(t.is_transitive());
        let t = triple(4, "(1 2)", "(1 2)", "(3 4)");
        assert_eq!(t.orbit_partition(), vec![vec![0, 1], vec![2, 3]]);
    }

    /// Exhaustive minimum of `encode` over all n! relabelings.
    fn brute_force_canonical(t: &InvolutionTriple) -> Vec<usize> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(t.n())
            .into_iter()
            .map(|img| t.relabel(&Permutation { img }).encode())
            .min()
            .unwrap()
    }

    #[test]
    fn canonicalize_idempotent_and_matches_brute_force() {
        let t = triple(3, "(2 3)", "", "");
        let (canon, sigma) = t.canonicalize();
        assert_eq!(canon.encode(), brute_force_canonical(&t));
        assert_eq!(t.relabel(&sigma), canon);
        let (canon2, sigma2) = canon.canonicalize();
        assert_eq!(canon2, canon);
        assert!(sigma2.is_identity());
    }

    #[test]
    fn canonicalize_brute_force_small_suite() {
        let cases = [
            triple(3, "(2 3)", "", ""),
            triple(3, "(1 2)", "(2 3)", "(1 3)"),
            triple(4, "(1 2)(3 4)", "(2 3)", "(1 4)"),
            triple(4, "", "(3 4)", "(3 4)"),
            triple(5, "(2 5)", "(1 3)", "(4 5)"),
            triple(5, "", "", ""),
            triple(5, "(1 2)(3 4)", "(1 3)(2 4)", "(5 1)"),
        ];
        for t in cases {
            let (canon, sigma) = t.canonicalize();
            assert_eq!(canon.encode(), brute_force_canonical(&t), "case {t:?}");
            assert_eq!(t.relabel(&sigma), canon);
        }
    }

    #[test]
    fn relabel_composes_points_correctly() {
        let p = perm("(1 2 3)", 4).compose(&perm("(1 2 3)", 4));
        let sigma = perm("(1 4)", 4);
        let q = p.relabel(&sigma);
        for i in 0..4 {
            assert_eq!(q.apply(sigma.apply(i)), sigma.apply(p.apply(i)));
        }
    }

    proptest! {
        #[test]
        fn word_evaluation_is_multiplicative(seed in 0u64..500, la in 0usize..5, lb in 0usize..5) {
            let (t, _) = random_triple(seed, 6);
            let w1 = random_word(seed.wrapping_add(1), la);
            let w2 = random_word(seed.wrapping_add(2), lb);
            let mut joined = w1.clone();
            joined.0.extend_from_slice(&w2.0);
            let lhs = evaluate_word(&t, &joined);
            let rhs = evaluate_word(&t, &w1).compose(&evaluate_word(&t, &w2));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_form_constant_on_conjugacy_classes(seed in 0u64..100) {
            let (t, n) = random_triple(seed, 8);
            let tau = random_perm(seed.wrapping_mul(7).wrapping_add(3), n);
            let conj = t.relabel(&tau);
            prop_assert_eq!(t.canonicalize().0, conj.canonicalize().0);
        }

        #[test]
        fn cycles_round_trip(seed in 0u64..200) {
            let p = random_perm(seed, 9);
            let parsed = Permutation::parse_cycles(&p.format_cycles(), 9).unwrap();
            prop_assert_eq!(parsed, p);
        }
    }

    // Deterministic test-only pseudo-random permutations (xorshift).
    fn next(state: &mut u64) -> u64 {
        let mut x = *state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        *state = x;
        x
    }

    pub(crate) fn random_perm(seed: u64, n: usize) -> Permutation {
        let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut img: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (next(&mut s) as usize) % (i + 1);
            img.swap(i, j);
        }
        Permutation { img }
    }

    pub(crate) fn random_involution(seed: u64, n: usize) -> Permutation {
        let mut s = seed.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(1);
        let mut img: Vec<usize> = (0..n).collect();
        let mut free: Vec<usize> = (0..n).collect();
        while free.len() >= 2 {
            if next(&mut s) % 3 == 0 {
                free.remove((next(&mut s) as usize) % free.len());
                continue;
            }
            let i = free.remove((next(&mut s) as usize) % free.len());
            let j = free.remove((next(&mut s) as usize) % free.len());
            img[i] = j;
            img[j] = i;
        }
        Permutation { img }
    }

    pub(crate) fn random_triple(seed: u64, n: usize) -> (InvolutionTriple, usize) {
        let t = InvolutionTriple::new(
            random_involution(seed, n),
            random_involution(seed.wrapping_add(101), n),
            random_involution(seed.wrapping_add(202), n),
        )
        .unwrap();
        (t, n)
    }

    fn random_word(seed: u64, len: usize) -> GeneratorWord {
        let mut s = seed.wrapping_mul(0xD1342543DE82EF95).wrapping_add(7);
        GeneratorWord((0..len).map(|_| Gen::ALL[(next(&mut s) as usize) % 3]).collect())
    }

    #[test]
    fn triple_json_round_trip() {
        let t = triple(4, "(1 2)(3 4)", "(2 3)", "");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"n":4,"a":"(1 2)(3 4)","b":"(2 3)","c":"()"}"#);
        let back: InvolutionTriple = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
