//! Artin systems defined by graphs, braid-word algebra, and the degree
//! character.
//!
//! Words are read left to right and concatenation appends; the inverse of a
//! word reverses the letter order and flips every sign. No normal forms are
//! computed anywhere: equality of group elements is only ever certified
//! downstream through the symplectic representation and winding numbers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Sign of a braid letter: a positive half-twist or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One letter `t_index` or `t_index^-1` of a braid word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u32,
    pub sign: Sign,
}

impl Letter {
    pub fn positive(index: u32) -> Letter {
        Letter { index, sign: Sign::Plus }
    }

    pub fn negative(index: u32) -> Letter {
        Letter { index, sign: Sign::Minus }
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, sign: self.sign.flipped() }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown token `{0}` (expected t<digits> or T<digits>)")]
    UnknownToken(String),
    #[error("generator index {index} out of range 1..={max} for {strands} strands")]
    IndexOutOfRange { index: u64, max: u32, strands: u32 },
    #[error("a braid word needs at least 2 strands, got {0}")]
    TooFewStrands(u32),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(u32, u32),
}

/// A word in the standard generators of the braid group `B_n`.
///
/// The empty word is the identity. Letters are kept exactly as written; use
/// [`BraidWord::free_reduced`] to cancel adjacent inverse pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// The identity word on `strands` strands.
    pub fn identity(strands: u32) -> Result<BraidWord, WordError> {
        if strands < 2 {
            return Err(WordError::TooFewStrands(strands));
        }
        Ok(BraidWord { strands, letters: Vec::new() })
    }

    /// Builds a word from letters, validating every index against `strands`.
    pub fn from_letters(
        strands: u32,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<BraidWord, WordError> {
        let mut word = BraidWord::identity(strands)?;
        for letter in letters {
            word.push(letter)?;
        }
        Ok(word)
    }

    /// Parses whitespace-separated tokens `t<k>` (positive) and `T<k>`
    /// (inverse), 1-based, in textual order. No implicit reduction.
    pub fn parse(text: &str, strands: u32) -> Result<BraidWord, WordError> {
        if strands < 2 {
            return Err(WordError::TooFewStrands(strands));
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let mut chars = token.chars();
            let sign = match chars.next() {
                Some('t') => Sign::Plus,
                Some('T') => Sign::Minus,
                _ => return Err(WordError::UnknownToken(token.to_string())),
            };
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(WordError::UnknownToken(token.to_string()));
            }
            let index: u64 = digits
                .parse()
                .map_err(|_| WordError::UnknownToken(token.to_string()))?;
            if index == 0 || index > u64::from(strands - 1) {
                return Err(WordError::IndexOutOfRange { index, max: strands - 1, strands });
            }
            letters.push(Letter { index: index as u32, sign });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) -> Result<(), WordError> {
        if letter.index == 0 || letter.index > self.strands - 1 {
            return Err(WordError::IndexOutOfRange {
                index: u64::from(letter.index),
                max: self.strands - 1,
                strands: self.strands,
            });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Concatenation `self · other`; both words must live on the same strands.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, WordError> {
        if self.strands != other.strands {
            return Err(WordError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Group-theoretic inverse: reversed letter order, flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^k` for k >= 0.
    pub fn repeat(&self, k: u32) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k as usize);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Freely reduced form: no adjacent pair `t_i t_i^-1` or `t_i^-1 t_i`
    /// remains. Represents the same group element.
    pub fn free_reduced(&self) -> BraidWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            if stack.last().is_some_and(|top| top.cancels(letter)) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        BraidWord { strands: self.strands, letters: stack }
    }

    /// The degree character: sends every generator to 1, so this is the sum
    /// of letter signs. Additive under concatenation.
    pub fn deg(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, letter) in self.letters.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            match letter.sign {
                Sign::Plus => write!(f, "t{}", letter.index)?,
                Sign::Minus => write!(f, "T{}", letter.index)?,
            }
        }
        Ok(())
    }
}

/// The ascending chain word `t_1 t_2 … t_{2g+1}` on `2g+2` strands.
pub fn h_word(g: u32) -> BraidWord {
    assert!(g >= 1, "genus must be at least 1");
    let strands = 2 * g + 2;
    BraidWord::from_letters(strands, (1..=2 * g + 1).map(Letter::positive))
        .expect("chain indices are in range")
}

/// The descending chain word `t_{2g+1} … t_2 t_1` on `2g+2` strands.
pub fn hbar_word(g: u32) -> BraidWord {
    assert!(g >= 1, "genus must be at least 1");
    let strands = 2 * g + 2;
    BraidWord::from_letters(strands, (1..=2 * g + 1).rev().map(Letter::positive))
        .expect("chain indices are in range")
}

/// The two Birman–Hilden kernel words: `r1 = h^{2g+1}·(h h̄)^{-1}` and
/// `r2 = h^{2g+2}`, with `deg(r1) = 4g²−1` and `deg(r2) = (2g+1)(2g+2)`.
pub fn kernel_generators(g: u32) -> (BraidWord, BraidWord) {
    let h = h_word(g);
    let hbar = hbar_word(g);
    let hh = h.concat(&hbar).expect("same strand count");
    let r1 = h.repeat(2 * g + 1).concat(&hh.inverse()).expect("same strand count");
    let r2 = h.repeat(2 * g + 2);
    (r1, r2)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} appears twice")]
    DuplicateVertex(u32),
    #[error("edge {0}-{0} is a loop")]
    LoopEdge(u32),
    #[error("edge {0}-{1} mentions an unknown vertex")]
    UnknownVertex(u32, u32),
    #[error("edge {0}-{1} has multiplicity 0; omit absent edges instead")]
    ZeroMultiplicity(u32, u32),
    #[error("vertex {0} cannot serve as a generator index (must be >= 1)")]
    VertexNotGenerator(u32),
    #[error("conflicting values for the two orientations of edge {0}-{1}")]
    OrientationConflict(u32, u32),
    #[error("graph has a cycle; only trees are supported")]
    CycleDetected,
    #[error("edge {0}-{1} has multiplicity {2} > 1; only simply-laced graphs are supported")]
    MultipleEdge(u32, u32, u32),
}

/// A finite loop-free graph with edge multiplicities, defining an Artin
/// system: one generator per vertex, one relation of length `k_ij + 2` per
/// vertex pair connected by `k_ij` edges (`k_ij = 0` for absent pairs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinGraph {
    vertices: Vec<u32>,
    edges: BTreeMap<(u32, u32), u32>,
}

impl ArtinGraph {
    pub fn new(
        vertices: Vec<u32>,
        edges: impl IntoIterator<Item = ((u32, u32), u32)>,
    ) -> Result<ArtinGraph, GraphError> {
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let mut normalized = BTreeMap::new();
        for ((i, j), k) in edges {
            if i == j {
                return Err(GraphError::LoopEdge(i));
            }
            if !seen.contains(&i) || !seen.contains(&j) {
                return Err(GraphError::UnknownVertex(i, j));
            }
            if k == 0 {
                return Err(GraphError::ZeroMultiplicity(i, j));
            }
            let key = (i.min(j), i.max(j));
            *normalized.entry(key).or_insert(0) += k;
        }
        Ok(ArtinGraph { vertices, edges: normalized })
    }

    /// The path graph on vertices `1..=n` with simple edges, i.e. the type-A
    /// diagram whose Artin group is the braid group `B_{n+1}`.
    pub fn a_path(n: u32) -> ArtinGraph {
        let vertices = (1..=n).collect();
        let edges = (1..n).map(|i| ((i, i + 1), 1));
        ArtinGraph::new(vertices, edges).expect("path graph is well formed")
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Number of edges joining `i` and `j` (0 when the pair is not connected).
    pub fn multiplicity(&self, i: u32, j: u32) -> u32 {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.edges.iter().map(|(&pair, &k)| (pair, k))
    }

    /// One defining relation per unordered vertex pair: the alternating words
    /// `t_i t_j t_i …` and `t_j t_i t_j …`, both of length `k_ij + 2`.
    ///
    /// Vertex ids double as generator indices, so each must be >= 1; the
    /// returned words live on `max_id + 1` strands.
    pub fn relations(&self) -> Result<Vec<(BraidWord, BraidWord)>, GraphError> {
        let max = self.vertices.iter().copied().max().unwrap_or(0);
        let strands = max + 1;
        let mut pairs = Vec::new();
        for (a, &i) in self.vertices.iter().enumerate() {
            if i == 0 {
                return Err(GraphError::VertexNotGenerator(i));
            }
            for &j in &self.vertices[a + 1..] {
                let len = self.multiplicity(i, j) as usize + 2;
                let alternating = |first: u32, second: u32| {
                    BraidWord::from_letters(
                        strands,
                        (0..len).map(|p| Letter::positive(if p % 2 == 0 { first } else { second })),
                    )
                    .expect("vertex ids are valid generator indices")
                };
                pairs.push((alternating(i, j), alternating(j, i)));
            }
        }
        Ok(pairs)
    }
}

/// Integer 0-cochain: a value `m_i` per vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain0 {
    values: BTreeMap<u32, i64>,
}

impl Cochain0 {
    pub fn get(&self, vertex: u32) -> Option<i64> {
        self.values.get(&vertex).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.values.iter().map(|(&v, &m)| (v, m))
    }
}

/// Integer 1-cochain on oriented edges, antisymmetric by construction:
/// one value is stored per unordered edge and orientation reversal negates it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain1 {
    entries: BTreeMap<(u32, u32), i64>,
}

impl Cochain1 {
    pub fn new() -> Cochain1 {
        Cochain1::default()
    }

    /// Sets the value on the oriented edge `i -> j`. Missing edges read as 0.
    pub fn set(&mut self, i: u32, j: u32, value: i64) {
        assert!(i != j, "cochain edges cannot be loops");
        if i < j {
            self.entries.insert((i, j), value);
        } else {
            self.entries.insert((j, i), -value);
        }
    }

    /// Value on the oriented edge `i -> j`.
    pub fn get(&self, i: u32, j: u32) -> i64 {
        if i < j {
            self.entries.get(&(i, j)).copied().unwrap_or(0)
        } else {
            -self.entries.get(&(j, i)).copied().unwrap_or(0)
        }
    }

    /// Builds a cochain from oriented-edge assignments, rejecting conflicting
    /// values for the two orientations of one edge.
    pub fn from_entries(
        entries: impl IntoIterator<Item = ((u32, u32), i64)>,
    ) -> Result<Cochain1, GraphError> {
        let mut cochain = Cochain1::new();
        for ((i, j), value) in entries {
            let key = (i.min(j), i.max(j));
            let normalized = if i < j { value } else { -value };
            if let Some(&existing) = cochain.entries.get(&key) {
                if existing != normalized {
                    return Err(GraphError::OrientationConflict(key.0, key.1));
                }
            }
            cochain.entries.insert(key, normalized);
        }
        Ok(cochain)
    }
}

/// Solves `δm = n` on a simply-laced forest, with `(δm)_[ij] = m_j − m_i`.
/// The first vertex of each component (in the graph's vertex order) gets
/// `m = 0`. Errors on cycles and on multiple edges.
pub fn solve_coboundary(graph: &ArtinGraph, n: &Cochain1) -> Result<Cochain0, GraphError> {
    for ((i, j), k) in graph.edges() {
        if k > 1 {
            return Err(GraphError::MultipleEdge(i, j, k));
        }
    }
    let mut adjacency: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for ((i, j), _) in graph.edges() {
        adjacency.entry(i).or_default().push(j);
        adjacency.entry(j).or_default().push(i);
    }

    let mut values: BTreeMap<u32, i64> = BTreeMap::new();
    for &root in graph.vertices() {
        if values.contains_key(&root) {
            continue;
        }
        values.insert(root, 0);
        let mut stack = vec![(root, None::<u32>)];
        while let Some((vertex, parent)) = stack.pop() {
            let m_vertex = values[&vertex];
            for &next in adjacency.get(&vertex).map_or(&[][..], |v| v) {
                if Some(next) == parent {
                    continue;
                }
                if values.contains_key(&next) {
                    return Err(GraphError::CycleDetected);
                }
                values.insert(next, m_vertex + n.get(vertex, next));
                stack.push((next, Some(vertex)));
            }
        }
    }
    Ok(Cochain0 { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(text: &str, strands: u32) -> BraidWord {
        BraidWord::parse(text, strands).unwrap()
    }

    #[test]
    fn parse_basic() {
        let w = word("t1 t2 T1", 4);
        assert_eq!(
            w.letters(),
            &[Letter::positive(1), Letter::positive(2), Letter::negative(1)]
        );
        assert_eq!(word("", 4), BraidWord::identity(4).unwrap());
        assert!(matches!(
            BraidWord::parse("t9", 4),
            Err(WordError::IndexOutOfRange { index: 9, max: 3, .. })
        ));
        assert!(matches!(BraidWord::parse("t0", 4), Err(WordError::IndexOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("x1", 4), Err(WordError::UnknownToken(_))));
        assert!(matches!(BraidWord::parse("t", 4), Err(WordError::UnknownToken(_))));
        assert!(matches!(BraidWord::parse("t1x", 4), Err(WordError::UnknownToken(_))));
        assert!(matches!(BraidWord::parse("t1", 1), Err(WordError::TooFewStrands(1))));
    }

    #[test]
    fn free_reduction() {
        assert!(word("t1 T1", 4).free_reduced().is_empty());
        assert_eq!(word("t1 t2 T2 t3", 4).free_reduced(), word("t1 t3", 4));
        assert_eq!(word("t1 t2", 4).free_reduced(), word("t1 t2", 4));
        // nested cancellation collapses fully
        assert!(word("t1 t2 T2 T1", 4).free_reduced().is_empty());
    }

    #[test]
    fn degree_values() {
        assert_eq!(h_word(2).deg(), 5);
        assert_eq!(BraidWord::identity(4).unwrap().deg(), 0);
        assert_eq!(word("t1 T2", 4).deg(), 0);
    }

    #[test]
    fn chain_words() {
        assert_eq!(h_word(1), word("t1 t2 t3", 4));
        assert_eq!(hbar_word(1), word("t3 t2 t1", 4));
        assert_eq!(h_word(2), word("t1 t2 t3 t4 t5", 6));
    }

    #[test]
    fn kernel_words() {
        let (r1, r2) = kernel_generators(1);
        assert_eq!(r2, h_word(1).repeat(4));
        assert_eq!(r2.len(), 12);
        assert_eq!(r2.deg(), 12);
        assert_eq!(r1.deg(), 3);

        let (r1, r2) = kernel_generators(2);
        assert_eq!(r1.deg(), 15);
        assert_eq!(r2.deg(), 30);
        // inverse realized letter-by-letter: r1 ends with the reversed,
        // sign-flipped h hbar
        let tail = &r1.letters()[r1.len() - 1];
        assert_eq!(*tail, Letter::negative(1));
    }

    #[test]
    fn relations_by_multiplicity() {
        let path = ArtinGraph::a_path(2);
        let rels = path.relations().unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0], (word("t1 t2 t1", 3), word("t2 t1 t2", 3)));

        let disconnected = ArtinGraph::new(vec![1, 2], []).unwrap();
        let rels = disconnected.relations().unwrap();
        assert_eq!(rels[0], (word("t1 t2", 3), word("t2 t1", 3)));

        let double = ArtinGraph::new(vec![1, 2], [((1, 2), 2)]).unwrap();
        let rels = double.relations().unwrap();
        assert_eq!(rels[0], (word("t1 t2 t1 t2", 3), word("t2 t1 t2 t1", 3)));
    }

    #[test]
    fn a_path_presents_braid_group() {
        let g = 2u32;
        let graph = ArtinGraph::a_path(2 * g + 1);
        let rels = graph.relations().unwrap();
        // C(2g+1, 2) pairs, each on 2g+2 strands
        assert_eq!(rels.len(), (2 * g + 1) as usize * (2 * g) as usize / 2);
        for (lhs, rhs) in &rels {
            assert_eq!(lhs.strands(), 2 * g + 2);
            let i = lhs.letters()[0].index;
            let j = rhs.letters()[0].index;
            let expected = if i.abs_diff(j) == 1 { 3 } else { 2 };
            assert_eq!(lhs.len(), expected);
        }
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(
            ArtinGraph::new(vec![1, 1], []),
            Err(GraphError::DuplicateVertex(1))
        ));
        assert!(matches!(
            ArtinGraph::new(vec![1], [((1, 1), 1)]),
            Err(GraphError::LoopEdge(1))
        ));
        assert!(matches!(
            ArtinGraph::new(vec![1, 2], [((1, 3), 1)]),
            Err(GraphError::UnknownVertex(1, 3))
        ));
    }

    #[test]
    fn coboundary_path() {
        let graph = ArtinGraph::new(vec![1, 2, 3], [((1, 2), 1), ((2, 3), 1)]).unwrap();
        let mut n = Cochain1::new();
        n.set(1, 2, 1);
        n.set(2, 3, -2);
        let m = solve_coboundary(&graph, &n).unwrap();
        assert_eq!(m.get(1), Some(0));
        assert_eq!(m.get(2), Some(1));
        assert_eq!(m.get(3), Some(-1));
    }

    #[test]
    fn coboundary_zero_and_star() {
        let graph = ArtinGraph::new(vec![1, 2, 3], [((1, 2), 1), ((2, 3), 1)]).unwrap();
        let m = solve_coboundary(&graph, &Cochain1::new()).unwrap();
        assert!(m.iter().all(|(_, v)| v == 0));

        let star =
            ArtinGraph::new(vec![0, 1, 2, 3], [((0, 1), 1), ((0, 2), 1), ((0, 3), 1)]).unwrap();
        let mut n = Cochain1::new();
        for k in 1..=3 {
            n.set(0, k, i64::from(k));
        }
        let m = solve_coboundary(&star, &n).unwrap();
        assert_eq!(
            (m.get(0), m.get(1), m.get(2), m.get(3)),
            (Some(0), Some(1), Some(2), Some(3))
        );
        // delta m = n on every oriented edge
        for ((i, j), _) in star.edges() {
            assert_eq!(m.get(j).unwrap() - m.get(i).unwrap(), n.get(i, j));
        }
    }

    #[test]
    fn coboundary_rejects_cycles_and_multi_edges() {
        let cycle =
            ArtinGraph::new(vec![1, 2, 3], [((1, 2), 1), ((2, 3), 1), ((3, 1), 1)]).unwrap();
        assert_eq!(
            solve_coboundary(&cycle, &Cochain1::new()),
            Err(GraphError::CycleDetected)
        );

        let multi = ArtinGraph::new(vec![1, 2], [((1, 2), 2)]).unwrap();
        assert_eq!(
            solve_coboundary(&multi, &Cochain1::new()),
            Err(GraphError::MultipleEdge(1, 2, 2))
        );
    }

    #[test]
    fn cochain_orientation_conflict() {
        assert!(Cochain1::from_entries([((1, 2), 5), ((2, 1), -5)]).is_ok());
        assert_eq!(
            Cochain1::from_entries([((1, 2), 5), ((2, 1), 5)]),
            Err(GraphError::OrientationConflict(1, 2))
        );
    }

    fn arb_word(strands: u32, max_len: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..strands, prop::bool::ANY), 0..max_len).prop_map(move |ls| {
            BraidWord::from_letters(
                strands,
                ls.into_iter().map(|(i, pos)| Letter {
                    index: i,
                    sign: if pos { Sign::Plus } else { Sign::Minus },
                }),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn deg_is_a_character(u in arb_word(6, 24), v in arb_word(6, 24)) {
            prop_assert_eq!(u.concat(&v).unwrap().deg(), u.deg() + v.deg());
        }

        #[test]
        fn free_reduce_preserves_deg_and_is_idempotent(w in arb_word(6, 32)) {
            let r = w.free_reduced();
            prop_assert_eq!(r.deg(), w.deg());
            prop_assert_eq!(r.free_reduced(), r.clone());
            // no adjacent cancelling pair remains
            for pair in r.letters().windows(2) {
                prop_assert!(!pair[0].cancels(pair[1]));
            }
        }

        #[test]
        fn display_parse_roundtrip(w in arb_word(6, 32)) {
            let text = w.to_string();
            prop_assert_eq!(BraidWord::parse(&text, 6).unwrap(), w);
        }

        #[test]
        fn inverse_cancels(w in arb_word(6, 24)) {
            prop_assert!(w.concat(&w.inverse()).unwrap().free_reduced().is_empty());
        }
    }
}
