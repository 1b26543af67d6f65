//! Finite loops presented by Cayley tables.
//!
//! A loop is a quasigroup with a two-sided identity: every row and every
//! column of its table is a permutation of `1..=n`, and some element `e`
//! satisfies `e·x = x·e = x`. Elements are 1-based to match the tabular
//! presentation; internal storage is 0-based.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

/// A 1-based element of a finite loop.
///
/// Obtain validated elements from [`FiniteLoop::element`] or iterate them
/// with [`FiniteLoop::elements`]. An `Element` is only meaningful for loops
/// of the order it was created for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) u16);

impl Element {
    /// The 1-based index of the element.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which line of the table a Latin-square violation was found on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("malformed table file: {0}")]
    MalformedFile(String),
    #[error("not a Latin square: {axis} {index} repeats value {value}")]
    NotLatinSquare {
        axis: Axis,
        index: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element index {index} out of range 1..={order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("image list is not a permutation of 1..={degree}")]
    NotPermutation { degree: usize },
    #[error("theta is not an isomorphism between the stated principal isotopes")]
    PremiseFails,
}

/// A finite loop given by its Cayley table, with divisions and one-sided
/// inverses precomputed.
///
/// Entry `(x, y)` of the table is the product `x·y`. The divisions satisfy
/// `x·(x\y) = y` and `(x/y)·y = x`, and the one-sided inverses satisfy
/// `x^λ·x = e = x·x^ρ`. All of `\`, `/`, `λ`, `ρ` are table lookups after
/// construction; the structure is immutable and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    order: usize,
    table: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
    identity: Element,
    left_inv: Vec<u16>,
    right_inv: Vec<u16>,
}

impl FiniteLoop {
    /// Builds a loop from explicit table rows, validating the Latin-square
    /// property and detecting the identity element.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<FiniteLoop, LoopError> {
        let order = rows.len();
        if order == 0 {
            return Err(LoopError::MalformedFile("empty table".into()));
        }
        if order > u16::MAX as usize {
            return Err(LoopError::MalformedFile(format!(
                "order {order} exceeds the supported maximum {}",
                u16::MAX
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(LoopError::MalformedFile(format!(
                    "row {} has {} entries, expected {order}",
                    i + 1,
                    row.len()
                )));
            }
            for &v in row {
                if v < 1 || v > order {
                    return Err(LoopError::MalformedFile(format!(
                        "row {}: entry {v} out of range 1..={order}",
                        i + 1
                    )));
                }
            }
        }
        let table: Vec<u16> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| v as u16))
            .collect();

        // ldiv[x][p] = y with x·y = p; a filled slot means row x repeats p.
        let mut ldiv = vec![0u16; order * order];
        for x in 0..order {
            for y in 0..order {
                let p = table[x * order + y] as usize;
                let slot = &mut ldiv[x * order + (p - 1)];
                if *slot != 0 {
                    return Err(LoopError::NotLatinSquare {
                        axis: Axis::Row,
                        index: x + 1,
                        value: p,
                    });
                }
                *slot = (y + 1) as u16;
            }
        }
        // rdiv[p][y] = z with z·y = p; a filled slot means column y repeats p.
        let mut rdiv = vec![0u16; order * order];
        for z in 0..order {
            for y in 0..order {
                let p = table[z * order + y] as usize;
                let slot = &mut rdiv[(p - 1) * order + y];
                if *slot != 0 {
                    return Err(LoopError::NotLatinSquare {
                        axis: Axis::Column,
                        index: y + 1,
                        value: p,
                    });
                }
                *slot = (z + 1) as u16;
            }
        }

        let identity = (0..order)
            .find(|&c| {
                (0..order).all(|j| table[c * order + j] == (j + 1) as u16)
                    && (0..order).all(|i| table[i * order + c] == (i + 1) as u16)
            })
            .map(|c| Element((c + 1) as u16))
            .ok_or(LoopError::NoIdentity)?;

        let e = identity.index() - 1;
        let left_inv: Vec<u16> = (0..order).map(|x| rdiv[e * order + x]).collect();
        let right_inv: Vec<u16> = (0..order).map(|x| ldiv[x * order + e]).collect();

        Ok(FiniteLoop {
            order,
            table,
            ldiv,
            rdiv,
            identity,
            left_inv,
            right_inv,
        })
    }

    /// Parses the loop table file format: optional `#` comment lines, then
    /// the order `n`, then `n` rows of `n` whitespace-separated entries.
    pub fn parse(text: &str) -> Result<FiniteLoop, LoopError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| LoopError::MalformedFile("empty file".into()))?;
        let order: usize = header.parse().map_err(|_| {
            LoopError::MalformedFile(format!(
                "expected the order on the first line, found {header:?}"
            ))
        })?;
        if order == 0 {
            return Err(LoopError::MalformedFile("order must be positive".into()));
        }
        let mut rows = Vec::with_capacity(order);
        for i in 0..order {
            let line = lines.next().ok_or_else(|| {
                LoopError::MalformedFile(format!("expected {order} rows, found {i}"))
            })?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        LoopError::MalformedFile(format!("row {}: bad entry {tok:?}", i + 1))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(LoopError::MalformedFile(format!(
                "trailing content after row {order}: {extra:?}"
            )));
        }
        FiniteLoop::from_rows(&rows)
    }

    /// Writes the numeric grid back out: the order line followed by the
    /// table rows, single-space separated. `serialize(parse(t))` reproduces
    /// the grid of `t` exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.order);
        for x in 0..self.order {
            let row = &self.table[x * self.order..(x + 1) * self.order];
            let line = row
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    /// The validated element with the given 1-based index.
    pub fn element(&self, index: usize) -> Result<Element, LoopError> {
        if index >= 1 && index <= self.order {
            Ok(Element(index as u16))
        } else {
            Err(LoopError::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator + Clone {
        (1..=self.order as u16).map(Element)
    }

    #[inline]
    fn pair(&self, x: Element, y: Element) -> usize {
        (x.index() - 1) * self.order + (y.index() - 1)
    }

    /// The product `x·y`.
    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        Element(self.table[self.pair(x, y)])
    }

    /// Left division `x\y`: the unique `z` with `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        Element(self.ldiv[self.pair(x, y)])
    }

    /// Right division `x/y`: the unique `z` with `z·y = x`.
    #[inline]
    pub fn rdiv(&self, x: Element, y: Element) -> Element {
        Element(self.rdiv[self.pair(x, y)])
    }

    /// `x^λ`, the unique element with `x^λ·x = e`.
    #[inline]
    pub fn left_inverse(&self, x: Element) -> Element {
        Element(self.left_inv[x.index() - 1])
    }

    /// `x^ρ`, the unique element with `x·x^ρ = e`.
    #[inline]
    pub fn right_inverse(&self, x: Element) -> Element {
        Element(self.right_inv[x.index() - 1])
    }
}
