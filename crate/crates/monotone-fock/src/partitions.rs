//! Dyck words, pair partitions and 2-to-1 mode maps.
//!
//! A sign word over `{-1,+1}` encodes a creator/annihilator pattern: `-1` is
//! an annihilator, `+1` a creator, and position 1 is the leftmost operator of
//! the monomial. The words whose vacuum moment can be nonzero are exactly the
//! Dyck words (zero total sum, nonnegative suffix sums); they are in bijection
//! with non-crossing pair partitions, and the mode maps constant on blocks
//! form the summation domain of the finite-N moments.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard bound for [`enumerate_dyck_words`]: Catalan growth.
pub const MAX_DYCK_HALF_LENGTH: usize = 12;
/// Hard bound for [`enumerate_pair_partitions`]: odd-factorial growth.
pub const MAX_PAIR_PARTITION_SIZE: usize = 16;

/// Errors from the combinatorial layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("sign word is not a Dyck word")]
    NotDyck,
    #[error("pair partition has crossing blocks")]
    Crossing,
    #[error("block ({0}, {1}) is not ordered as l < r")]
    BlockNotOrdered(usize, usize),
    #[error("block endpoints are not exactly {{1..{0}}}")]
    BadEndpoints(usize),
    #[error("map does not respect the partition blocks")]
    MismatchedMap,
    #[error("{what} {requested} exceeds the supported bound {max}")]
    TooLarge {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    #[error("invalid sign character {0:?} (expected '-' or '+')")]
    BadSignChar(char),
    #[error("invalid sign value {0} (expected -1 or +1)")]
    BadSignValue(i32),
}

/// One letter of a creator/annihilator pattern: `-1` or `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// `-1`: annihilator.
    Minus,
    /// `+1`: creator.
    Plus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_value(v: i32) -> Result<Self, PartitionError> {
        match v {
            -1 => Ok(Sign::Minus),
            1 => Ok(Sign::Plus),
            other => Err(PartitionError::BadSignValue(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn is_creator(self) -> bool {
        self == Sign::Plus
    }
}

/// A creator/annihilator pattern `ε ∈ {-1,+1}^m`, read left to right in
/// operator order (the leftmost sign is the leftmost operator).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignWord {
    signs: Vec<Sign>,
}

impl SignWord {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignWord { signs }
    }

    pub fn from_values(values: &[i32]) -> Result<Self, PartitionError> {
        let signs = values
            .iter()
            .map(|&v| Sign::from_value(v))
            .collect::<Result<_, _>>()?;
        Ok(SignWord { signs })
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Dyck membership: even length, zero total sum, and every suffix sum
    /// `Σ_{j=k..m} ε(j)` nonnegative. Total function, never errors.
    pub fn is_dyck(&self) -> bool {
        if !self.signs.len().is_multiple_of(2) {
            return false;
        }
        let mut suffix = 0i64;
        for s in self.signs.iter().rev() {
            suffix += i64::from(s.value());
            if suffix < 0 {
                return false;
            }
        }
        suffix == 0
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignWord {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s
            .chars()
            .map(|c| match c {
                '-' => Ok(Sign::Minus),
                '+' => Ok(Sign::Plus),
                other => Err(PartitionError::BadSignChar(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(SignWord { signs })
    }
}

/// All Dyck words of length `2n`, in lexicographic order with `'-' < '+'`.
///
/// The cardinality is the nth Catalan number. `n = 0` yields the empty word.
pub fn enumerate_dyck_words(n: usize) -> Result<Vec<SignWord>, PartitionError> {
    if n > MAX_DYCK_HALF_LENGTH {
        return Err(PartitionError::TooLarge {
            what: "Dyck half-length",
            requested: n,
            max: MAX_DYCK_HALF_LENGTH,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(2 * n);
    // Nonnegative suffix sums are equivalent to: every proper prefix sum is
    // <= 0 and the full sum is 0. Generate left to right, '-' first.
    fn recurse(
        current: &mut Vec<Sign>,
        prefix_sum: i64,
        remaining: usize,
        out: &mut Vec<SignWord>,
    ) {
        if remaining == 0 {
            if prefix_sum == 0 {
                out.push(SignWord::new(current.clone()));
            }
            return;
        }
        // feasibility: must be able to return to 0 in `remaining` steps
        if prefix_sum.unsigned_abs() as usize > remaining {
            return;
        }
        for sign in [Sign::Minus, Sign::Plus] {
            let next = prefix_sum + i64::from(sign.value());
            if next > 0 && remaining > 1 {
                continue; // a proper prefix with positive sum breaks the suffix condition
            }
            current.push(sign);
            recurse(current, next, remaining - 1, out);
            current.pop();
        }
    }
    recurse(&mut current, 0, 2 * n, &mut out);
    Ok(out)
}

/// A pair partition `(l_h, r_h)_{h=1..n}` of `{1..2n}`, stored in canonical
/// block order `l_1 < l_2 < … < l_n`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairPartition {
    blocks: Vec<(usize, usize)>,
}

impl PairPartition {
    /// Validates that blocks are ordered pairs covering `{1..2n}` exactly,
    /// and canonicalizes to ascending left endpoints.
    pub fn new(mut blocks: Vec<(usize, usize)>) -> Result<Self, PartitionError> {
        for &(l, r) in &blocks {
            if l >= r {
                return Err(PartitionError::BlockNotOrdered(l, r));
            }
        }
        let two_n = 2 * blocks.len();
        let mut seen = vec![false; two_n + 1];
        for &(l, r) in &blocks {
            for endpoint in [l, r] {
                if endpoint == 0 || endpoint > two_n || seen[endpoint] {
                    return Err(PartitionError::BadEndpoints(two_n));
                }
                seen[endpoint] = true;
            }
        }
        blocks.sort_unstable();
        Ok(PairPartition { blocks })
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// Number of blocks, `n`.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Number of covered points, `2n`.
    pub fn size(&self) -> usize {
        2 * self.blocks.len()
    }

    /// True iff no two blocks interleave as `l_h < l_m < r_h < r_m`.
    pub fn is_non_crossing(&self) -> bool {
        for (i, &(_, ri)) in self.blocks.iter().enumerate() {
            for &(lj, rj) in &self.blocks[i + 1..] {
                if lj < ri && ri < rj {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the outermost block spans `(1, 2n)`. Rejects crossing input.
    pub fn is_connected(&self) -> Result<bool, PartitionError> {
        if !self.is_non_crossing() {
            return Err(PartitionError::Crossing);
        }
        match self.blocks.first() {
            Some(&(l, r)) => Ok(l == 1 && r == self.size()),
            None => Ok(true),
        }
    }

    /// Splits `{1..2n}` at outermost-block boundaries into consecutive
    /// segments, each re-indexed from 1. Every segment is connected and their
    /// concatenation recovers the partition.
    pub fn connected_components(&self) -> Result<Vec<PairPartition>, PartitionError> {
        if !self.is_non_crossing() {
            return Err(PartitionError::Crossing);
        }
        let mut components = Vec::new();
        let mut idx = 0;
        let mut expected_start = 1;
        while idx < self.blocks.len() {
            let (start, end) = self.blocks[idx];
            debug_assert_eq!(start, expected_start);
            expected_start = end + 1;
            let mut segment = Vec::new();
            while idx < self.blocks.len() && self.blocks[idx].0 <= end {
                let (l, r) = self.blocks[idx];
                segment.push((l - start + 1, r - start + 1));
                idx += 1;
            }
            components.push(PairPartition::new(segment).expect("segment of a valid partition"));
        }
        Ok(components)
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, r)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({l},{r})")?;
        }
        Ok(())
    }
}

/// The unique non-crossing pair partition of a Dyck word, obtained by
/// repeatedly pairing the leftmost adjacent `(-1, +1)` and deleting it.
///
/// Equivalent to bracket matching with `-` opening and `+` closing.
pub fn dyck_to_pair_partition(word: &SignWord) -> Result<PairPartition, PartitionError> {
    if !word.is_dyck() {
        return Err(PartitionError::NotDyck);
    }
    let mut stack = Vec::new();
    let mut blocks = Vec::with_capacity(word.len() / 2);
    for (i, s) in word.signs().iter().enumerate() {
        match s {
            Sign::Minus => stack.push(i + 1),
            Sign::Plus => {
                let l = stack.pop().expect("Dyck word keeps the stack nonempty");
                blocks.push((l, i + 1));
            }
        }
    }
    PairPartition::new(blocks)
}

/// Inverse of [`dyck_to_pair_partition`]: `ε(l_h) = -1`, `ε(r_h) = +1`.
/// Only non-crossing partitions correspond to Dyck words.
pub fn pair_partition_to_dyck(p: &PairPartition) -> Result<SignWord, PartitionError> {
    if !p.is_non_crossing() {
        return Err(PartitionError::Crossing);
    }
    let mut signs = vec![Sign::Plus; p.size()];
    for &(l, _) in p.blocks() {
        signs[l - 1] = Sign::Minus;
    }
    Ok(SignWord::new(signs))
}

/// All pair partitions of `{1..two_n}` (crossing included); cardinality
/// `(2n)!/(2^n n!)`.
pub fn enumerate_pair_partitions(two_n: usize) -> Result<Vec<PairPartition>, PartitionError> {
    if !two_n.is_multiple_of(2) {
        return Err(PartitionError::BadEndpoints(two_n));
    }
    if two_n > MAX_PAIR_PARTITION_SIZE {
        return Err(PartitionError::TooLarge {
            what: "pair partition size",
            requested: two_n,
            max: MAX_PAIR_PARTITION_SIZE,
        });
    }
    let mut out = Vec::new();
    let mut free: Vec<usize> = (1..=two_n).collect();
    let mut blocks = Vec::with_capacity(two_n / 2);
    // always pair the smallest free point; deterministic output order
    fn recurse(
        free: &mut Vec<usize>,
        blocks: &mut Vec<(usize, usize)>,
        out: &mut Vec<PairPartition>,
    ) {
        if free.is_empty() {
            out.push(PairPartition::new(blocks.clone()).expect("generated blocks are valid"));
            return;
        }
        let l = free.remove(0);
        for pos in 0..free.len() {
            let r = free.remove(pos);
            blocks.push((l, r));
            recurse(free, blocks, out);
            blocks.pop();
            free.insert(pos, r);
        }
        free.insert(0, l);
    }
    recurse(&mut free, &mut blocks, &mut out);
    Ok(out)
}

/// A 2-to-1 map `k: {1..2n} → {1..N}`, constant on the blocks of a pair
/// partition with pairwise-distinct block values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairMap {
    range_size: u32,
    values: Vec<u32>,
}

impl PairMap {
    /// Builds the map from one value per block (in canonical block order).
    pub fn from_block_values(
        p: &PairPartition,
        range_size: u32,
        block_values: &[u32],
    ) -> Result<Self, PartitionError> {
        if block_values.len() != p.n() {
            return Err(PartitionError::MismatchedMap);
        }
        for (i, &v) in block_values.iter().enumerate() {
            if v == 0 || v > range_size {
                return Err(PartitionError::MismatchedMap);
            }
            if block_values[..i].contains(&v) {
                return Err(PartitionError::MismatchedMap);
            }
        }
        let mut values = vec![0u32; p.size()];
        for (&(l, r), &v) in p.blocks().iter().zip(block_values) {
            values[l - 1] = v;
            values[r - 1] = v;
        }
        Ok(PairMap { range_size, values })
    }

    /// `k(pos)` for a 1-based position.
    pub fn value_at(&self, pos: usize) -> u32 {
        self.values[pos - 1]
    }

    /// All values `k(1), …, k(2n)` in position order.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn range_size(&self) -> u32 {
        self.range_size
    }

    /// The block representatives `(k(r_1), …, k(r_n))`.
    pub fn block_values(&self, p: &PairPartition) -> Vec<u32> {
        p.blocks().iter().map(|&(_, r)| self.value_at(r)).collect()
    }
}

/// Iterator over every 2-to-1 map constant on the blocks of `p` with values
/// in `{1..=range_size}`, in lexicographic order of `(k(r_1), …, k(r_n))`.
///
/// Yields `N(N-1)…(N-n+1)` maps; empty when `range_size < n`.
pub fn enumerate_pair_maps(p: &PairPartition, range_size: u32) -> PairMapIter<'_> {
    PairMapIter {
        partition: p,
        range_size,
        stack: vec![1],
        done: false,
    }
}

/// See [`enumerate_pair_maps`].
pub struct PairMapIter<'a> {
    partition: &'a PairPartition,
    range_size: u32,
    /// candidate block values; `stack[i]` is the next value to try at depth i
    stack: Vec<u32>,
    done: bool,
}

impl PairMapIter<'_> {
    /// Advances the partial assignment to the next complete distinct tuple.
    fn advance(&mut self) -> Option<Vec<u32>> {
        let n = self.partition.n();
        if self.done {
            return None;
        }
        if n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        loop {
            let depth = self.stack.len() - 1;
            let candidate = self.stack[depth];
            if candidate > self.range_size {
                // exhausted this level; backtrack
                self.stack.pop();
                match self.stack.last_mut() {
                    Some(prev) => *prev += 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
                continue;
            }
            if self.stack[..depth].contains(&candidate) {
                self.stack[depth] += 1;
                continue;
            }
            if depth + 1 == n {
                let tuple = self.stack.clone();
                self.stack[depth] += 1;
                return Some(tuple);
            }
            self.stack.push(1);
        }
    }
}

impl Iterator for PairMapIter<'_> {
    type Item = PairMap;

    fn next(&mut self) -> Option<PairMap> {
        let tuple = self.advance()?;
        Some(
            PairMap::from_block_values(self.partition, self.range_size, &tuple)
                .expect("generated block values are valid"),
        )
    }
}
