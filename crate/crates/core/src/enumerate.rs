//! Exhaustive small-order loop enumeration, inverse-cycle analysis, and the
//! embedded corpus.
//!
//! A loop table normalized to identity 1 is exactly a reduced Latin square
//! (natural first row and column), so enumeration is a backtracking fill of
//! the remaining `(n-1)²` cells with row/column bitmasks. Every emitted
//! table is revalidated through [`FiniteLoop::from_rows`]. Counts for
//! n = 1..=6 are 1, 1, 1, 4, 56, 9408.

use thiserror::Error;

use crate::loops::{Element, FiniteLoop, LoopError};
use crate::mappings::Permutation;

/// Largest order enumerated without the streaming opt-in.
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("order {n} exceeds the exhaustive cap {max}; use the streaming variant")]
    OrderTooLarge { n: usize, max: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
}

/// Streaming iterator over all loops of a fixed order with identity 1,
/// in table-lexicographic order, each exactly once.
pub struct LoopIter {
    n: usize,
    grid: Vec<u16>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    values: Vec<u16>,
    pos: usize,
    done: bool,
}

impl LoopIter {
    fn new(n: usize) -> LoopIter {
        let mut grid = vec![0u16; n * n];
        let mut row_used = vec![0u32; n];
        let mut col_used = vec![0u32; n];
        for j in 0..n {
            grid[j] = (j + 1) as u16;
            col_used[j] |= 1 << j;
        }
        for i in 0..n {
            grid[i * n] = (i + 1) as u16;
            row_used[i] |= 1 << i;
        }
        let cells = if n > 1 { (n - 1) * (n - 1) } else { 0 };
        LoopIter {
            n,
            grid,
            row_used,
            col_used,
            values: vec![0; cells.max(1)],
            pos: 0,
            done: false,
        }
    }

    #[inline]
    fn cell(&self, pos: usize) -> (usize, usize) {
        (1 + pos / (self.n - 1), 1 + pos % (self.n - 1))
    }

    fn build(&self) -> FiniteLoop {
        let rows: Vec<Vec<usize>> = (0..self.n)
            .map(|i| {
                self.grid[i * self.n..(i + 1) * self.n]
                    .iter()
                    .map(|&v| v as usize)
                    .collect()
            })
            .collect();
        FiniteLoop::from_rows(&rows).expect("backtracker emits valid loops")
    }
}

impl Iterator for LoopIter {
    type Item = FiniteLoop;

    fn next(&mut self) -> Option<FiniteLoop> {
        if self.done {
            return None;
        }
        if self.n == 1 {
            self.done = true;
            return Some(self.build());
        }
        let total = (self.n - 1) * (self.n - 1);
        let mut pos = self.pos;
        loop {
            let (i, j) = self.cell(pos);
            let last = self.values[pos];
            if last != 0 {
                let bit = 1u32 << (last - 1);
                self.row_used[i] &= !bit;
                self.col_used[j] &= !bit;
            }
            let taken = self.row_used[i] | self.col_used[j];
            let mut placed = 0u16;
            for cand in (last + 1)..=(self.n as u16) {
                if taken & (1 << (cand - 1)) == 0 {
                    placed = cand;
                    break;
                }
            }
            if placed != 0 {
                let bit = 1u32 << (placed - 1);
                self.row_used[i] |= bit;
                self.col_used[j] |= bit;
                self.grid[i * self.n + j] = placed;
                self.values[pos] = placed;
                if pos == total - 1 {
                    self.pos = pos;
                    return Some(self.build());
                }
                pos += 1;
                self.values[pos] = 0;
            } else {
                self.values[pos] = 0;
                self.grid[i * self.n + j] = 0;
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
            }
        }
    }
}

/// All loops of order `n ≤ 6` with identity 1, streamed exactly once.
pub fn enumerate_loops(n: usize) -> Result<LoopIter, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroOrder);
    }
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(EnumerateError::OrderTooLarge {
            n,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    Ok(LoopIter::new(n))
}

/// The opt-in streaming variant without the order cap. Order 7 is minutes
/// of work and ~17M tables; anything larger is out of scope.
pub fn enumerate_loops_streaming(n: usize) -> Result<LoopIter, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroOrder);
    }
    Ok(LoopIter::new(n))
}

/// Enumeration filtered by an arbitrary predicate.
pub fn enumerate_loops_where<P>(
    n: usize,
    pred: P,
) -> Result<impl Iterator<Item = FiniteLoop>, EnumerateError>
where
    P: FnMut(&FiniteLoop) -> bool,
{
    Ok(enumerate_loops(n)?.filter(pred))
}

/// The permutation `J_ρ : x ↦ x^ρ` and its cycle decomposition. Nontrivial
/// cycles exist exactly when left and right inverses diverge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseCycleReport {
    perm: Permutation,
    cycles: Vec<Vec<Element>>,
}

impl InverseCycleReport {
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn cycles(&self) -> &[Vec<Element>] {
        &self.cycles
    }

    /// Cycle lengths as a sorted multiset.
    pub fn lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles.iter().map(|c| c.len()).collect();
        lens.sort();
        lens
    }

    /// Standard cycle notation, fixed points included.
    pub fn notation(&self) -> String {
        self.cycles
            .iter()
            .map(|c| {
                let inner = c
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("({inner})")
            })
            .collect()
    }
}

pub fn inverse_cycles(lp: &FiniteLoop) -> InverseCycleReport {
    let images: Vec<usize> = lp.elements().map(|x| lp.right_inverse(x).index()).collect();
    let perm = Permutation::from_images(images).expect("J_rho is a bijection");
    let cycles = perm.cycles();
    InverseCycleReport { perm, cycles }
}

/// The order-16 universal Osborn loop used throughout the worked examples.
/// It is a G-loop, neither Moufang nor conjugacy closed.
pub const KINYON16_TAB: &str = "\
16
1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16
2 1 4 3 6 5 8 7 10 9 12 11 14 13 16 15
3 4 1 2 7 8 5 6 11 12 9 10 15 16 13 14
4 3 2 1 8 7 6 5 12 11 10 9 16 15 14 13
5 6 8 7 1 2 4 3 13 14 16 15 10 9 11 12
6 5 7 8 2 1 3 4 14 13 15 16 9 10 12 11
7 8 6 5 3 4 2 1 15 16 14 13 12 11 9 10
8 7 5 6 4 3 1 2 16 15 13 14 11 12 10 9
9 10 11 12 15 16 13 14 5 6 7 8 3 4 1 2
10 9 12 11 16 15 14 13 6 5 8 7 4 3 2 1
11 12 9 10 13 14 15 16 8 7 6 5 2 1 4 3
12 11 10 9 14 13 16 15 7 8 5 6 1 2 3 4
13 14 16 15 12 11 9 10 1 2 4 3 7 8 6 5
14 13 15 16 11 12 10 9 2 1 3 4 8 7 5 6
15 16 14 13 10 9 11 12 4 3 1 2 6 5 7 8
16 15 13 14 9 10 12 11 3 4 2 1 5 6 8 7
";

pub fn kinyon16() -> FiniteLoop {
    FiniteLoop::parse(KINYON16_TAB).expect("embedded table is valid")
}

fn cyclic(n: usize) -> FiniteLoop {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n + 1).collect())
        .collect();
    FiniteLoop::from_rows(&rows).expect("cyclic table is valid")
}

fn klein4() -> FiniteLoop {
    let rows: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).map(|j| (i ^ j) + 1).collect())
        .collect();
    FiniteLoop::from_rows(&rows).expect("klein table is valid")
}

fn sym3() -> FiniteLoop {
    // Permutations of {1,2,3} in lexicographic order; product p·q applies
    // p first, then q.
    let perms: [[usize; 3]; 6] = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ];
    let rows: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed = [q[p[0] - 1], q[p[1] - 1], q[p[2] - 1]];
                    perms.iter().position(|r| *r == composed).unwrap() + 1
                })
                .collect()
        })
        .collect();
    FiniteLoop::from_rows(&rows).expect("symmetric group table is valid")
}

/// The named built-in collection: the order-16 Osborn loop, cyclic groups
/// of orders 2–6, the Klein four-group, and the symmetric group on three
/// letters.
pub fn corpus() -> Vec<(&'static str, FiniteLoop)> {
    vec![
        ("kinyon16", kinyon16()),
        ("z2", cyclic(2)),
        ("z3", cyclic(3)),
        ("z4", cyclic(4)),
        ("z5", cyclic(5)),
        ("z6", cyclic(6)),
        ("klein4", klein4()),
        ("s3", sym3()),
    ]
}

pub fn corpus_loop(name: &str) -> Option<FiniteLoop> {
    corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, lp)| lp)
}

/// Convenience used by tests and the CLI: a corpus loop or a parse of the
/// given text.
pub fn corpus_or_parse(source: &str) -> Result<FiniteLoop, LoopError> {
    match corpus_loop(source) {
        Some(lp) => Ok(lp),
        None => FiniteLoop::parse(source),
    }
}
