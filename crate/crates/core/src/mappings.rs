//! Translations, concrete permutations, and formal mapping words.
//!
//! Everything here acts on the right and composes postfix, matching the
//! `yL_x` notation: in a word `[L(x), R(y)]` the map `L(x)` is applied
//! first, so the word sends `z` to `(x·z)·y`. Composition-order bugs are
//! the dominant failure mode in this domain — every composition in this
//! module reads left to right.
//!
//! The multiplication group is never enumerated. Statements about its
//! elements are phrased pointwise over [`MappingWord`]s, which is exact on
//! a finite loop and avoids materializing a subgroup of `S_n`.

use std::fmt;

use crate::loops::{Element, FiniteLoop, LoopError};

/// Which translation family a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A bijection on `1..=n`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            image: (1..=degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation, LoopError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &v in &images {
            if v < 1 || v > degree || seen[v - 1] {
                return Err(LoopError::NotPermutation { degree });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            image: images.into_iter().map(|v| v as u16).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        Element(self.image[x.index() - 1])
    }

    /// Postfix composition: `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            image: self
                .image
                .iter()
                .map(|&v| other.image[v as usize - 1])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0u16; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = (i + 1) as u16;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// Cycle decomposition in canonical form: each cycle starts at its
    /// smallest point, cycles ordered by that point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<Element>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(Element((cur + 1) as u16));
                cur = self.image[cur] as usize - 1;
            }
            out.push(cycle);
        }
        out
    }
}

/// The row (left) or column (right) permutation of the table at `a`:
/// `translation(Left, a)` maps `y ↦ a·y`, `translation(Right, a)` maps
/// `y ↦ y·a`.
pub fn translation(lp: &FiniteLoop, side: Side, a: Element) -> Permutation {
    let image = lp
        .elements()
        .map(|y| match side {
            Side::Left => lp.mul(a, y).0,
            Side::Right => lp.mul(y, a).0,
        })
        .collect();
    Permutation { image }
}

/// One generator symbol of the multiplication group: a translation or the
/// inverse of one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `L(a)`: `y ↦ a·y`
    L(Element),
    /// `R(a)`: `y ↦ y·a`
    R(Element),
    /// `L(a)⁻¹`: `y ↦ a\y`
    LInv(Element),
    /// `R(a)⁻¹`: `y ↦ y/a`
    RInv(Element),
}

impl Generator {
    #[inline]
    pub fn apply(self, lp: &FiniteLoop, y: Element) -> Element {
        match self {
            Generator::L(a) => lp.mul(a, y),
            Generator::R(a) => lp.mul(y, a),
            Generator::LInv(a) => lp.ldiv(a, y),
            Generator::RInv(a) => lp.rdiv(y, a),
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::L(a) => Generator::LInv(a),
            Generator::LInv(a) => Generator::L(a),
            Generator::R(a) => Generator::RInv(a),
            Generator::RInv(a) => Generator::R(a),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(a) => write!(f, "L:{a}"),
            Generator::R(a) => write!(f, "R:{a}"),
            Generator::LInv(a) => write!(f, "Li:{a}"),
            Generator::RInv(a) => write!(f, "Ri:{a}"),
        }
    }
}

/// A formal composition of translation generators, applied left to right.
///
/// Structural equality (`==`) compares symbols; use [`words_equal`] for
/// pointwise equality of the induced maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MappingWord {
    gens: Vec<Generator>,
}

impl MappingWord {
    pub fn new(gens: Vec<Generator>) -> MappingWord {
        MappingWord { gens }
    }

    /// The empty word, the identity map on any loop.
    pub fn empty() -> MappingWord {
        MappingWord { gens: Vec::new() }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Applies each generator in turn, left to right.
    pub fn evaluate(&self, lp: &FiniteLoop, y: Element) -> Element {
        self.gens.iter().fold(y, |acc, g| g.apply(lp, acc))
    }

    /// The concrete permutation this word induces on `lp`.
    pub fn permutation(&self, lp: &FiniteLoop) -> Permutation {
        Permutation {
            image: lp.elements().map(|y| self.evaluate(lp, y).0).collect(),
        }
    }

    /// The formal inverse word: generators reversed and inverted. Evaluating
    /// a word then its inverse is the identity map on any loop.
    pub fn inverse(&self) -> MappingWord {
        MappingWord {
            gens: self.gens.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &MappingWord) -> MappingWord {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        MappingWord { gens }
    }

    /// Parses the comma-separated token syntax, e.g. `L:16,L:10,R:10,R:16`.
    /// `I` (or an empty string) is the empty word. Element indices are
    /// validated against `lp`.
    pub fn parse(text: &str, lp: &FiniteLoop) -> Result<MappingWord, LoopError> {
        let text = text.trim();
        if text.is_empty() || text == "I" {
            return Ok(MappingWord::empty());
        }
        let mut gens = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let (kind, idx) = tok.split_once(':').ok_or_else(|| {
                LoopError::MalformedFile(format!("bad word token {tok:?}, expected e.g. L:16"))
            })?;
            let idx: usize = idx.parse().map_err(|_| {
                LoopError::MalformedFile(format!("bad element in word token {tok:?}"))
            })?;
            let a = lp.element(idx)?;
            let gen = match kind {
                "L" => Generator::L(a),
                "R" => Generator::R(a),
                "Li" => Generator::LInv(a),
                "Ri" => Generator::RInv(a),
                _ => {
                    return Err(LoopError::MalformedFile(format!(
                        "unknown generator {kind:?} in word token {tok:?}"
                    )))
                }
            };
            gens.push(gen);
        }
        Ok(MappingWord { gens })
    }
}

impl fmt::Display for MappingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("I");
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromIterator<Generator> for MappingWord {
    fn from_iter<T: IntoIterator<Item = Generator>>(iter: T) -> Self {
        MappingWord {
            gens: iter.into_iter().collect(),
        }
    }
}

/// Pointwise equality of the maps induced by two words on `lp`.
pub fn words_equal(lp: &FiniteLoop, w1: &MappingWord, w2: &MappingWord) -> bool {
    lp.elements()
        .all(|y| w1.evaluate(lp, y) == w2.evaluate(lp, y))
}

/// Middle inner mapping `T_(x) = R_x L_x⁻¹`.
pub fn inner_t(x: Element) -> MappingWord {
    MappingWord::new(vec![Generator::R(x), Generator::LInv(x)])
}

/// Right inner mapping `R_(x,y) = R_x R_y R_{xy}⁻¹`.
pub fn inner_r(lp: &FiniteLoop, x: Element, y: Element) -> MappingWord {
    MappingWord::new(vec![
        Generator::R(x),
        Generator::R(y),
        Generator::RInv(lp.mul(x, y)),
    ])
}

/// Left inner mapping `L_(x,y) = L_x L_y L_{yx}⁻¹`.
pub fn inner_l(lp: &FiniteLoop, x: Element, y: Element) -> MappingWord {
    MappingWord::new(vec![
        Generator::L(x),
        Generator::L(y),
        Generator::LInv(lp.mul(y, x)),
    ])
}

/// `θ_y = L_y L_{y^λ}`.
pub fn theta(lp: &FiniteLoop, y: Element) -> MappingWord {
    MappingWord::new(vec![Generator::L(y), Generator::L(lp.left_inverse(y))])
}

/// `E_x = R_x R_{x^ρ}`.
pub fn big_e(lp: &FiniteLoop, x: Element) -> MappingWord {
    MappingWord::new(vec![Generator::R(x), Generator::R(lp.right_inverse(x))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{corpus, kinyon16};
    use proptest::prelude::*;

    fn el(lp: &FiniteLoop, i: usize) -> Element {
        lp.element(i).unwrap()
    }

    fn word(lp: &FiniteLoop, s: &str) -> MappingWord {
        MappingWord::parse(s, lp).unwrap()
    }

    #[test]
    fn translations_are_table_lines() {
        let lp = kinyon16();
        let l16 = translation(&lp, Side::Left, el(&lp, 16));
        assert_eq!(l16.apply(el(&lp, 7)).index(), 12);
        let r16 = translation(&lp, Side::Right, el(&lp, 16));
        assert_eq!(r16.apply(el(&lp, 8)).index(), 9);
        assert!(translation(&lp, Side::Left, lp.identity()).is_identity());
        assert!(translation(&lp, Side::Right, lp.identity()).is_identity());
    }

    #[test]
    fn evaluate_follows_postfix_order() {
        let lp = kinyon16();
        // 9 → 3 → 12 → 8 → 9 under L(16), L(10), R(10), R(16).
        let w = word(&lp, "L:16,L:10,R:10,R:16");
        let steps: Vec<usize> = w
            .generators()
            .iter()
            .scan(el(&lp, 9), |acc, g| {
                *acc = g.apply(&lp, *acc);
                Some(acc.index())
            })
            .collect();
        assert_eq!(steps, vec![3, 12, 8, 9]);
        assert_eq!(w.evaluate(&lp, el(&lp, 9)).index(), 9);
        assert_eq!(word(&lp, "L:16,L:10").evaluate(&lp, el(&lp, 7)).index(), 7);
        assert_eq!(MappingWord::empty().evaluate(&lp, el(&lp, 5)).index(), 5);
    }

    #[test]
    fn theta_and_big_e() {
        let lp = kinyon16();
        assert_eq!(
            theta(&lp, el(&lp, 16)).evaluate(&lp, el(&lp, 9)).index(),
            12
        );
        let e = lp.identity();
        assert!(theta(&lp, e).permutation(&lp).is_identity());
        assert!(big_e(&lp, e).permutation(&lp).is_identity());
        // Huthnance: E_x = E_{x^λ} (= E_{x^ρ}); 16^λ = 10.
        assert!(words_equal(
            &lp,
            &big_e(&lp, el(&lp, 16)),
            &big_e(&lp, el(&lp, 10))
        ));
    }

    #[test]
    fn big_e_invariant_under_inverses_on_osborn_corpus() {
        // E_x = E_{x^λ} = E_{x^ρ} holds on every Osborn corpus loop.
        for (name, lp) in corpus() {
            let osborn =
                crate::properties::is_osborn(&lp, crate::properties::OsbornVariant::Os0).passed();
            if !osborn {
                continue;
            }
            for x in lp.elements() {
                assert!(
                    words_equal(&lp, &big_e(&lp, x), &big_e(&lp, lp.left_inverse(x))),
                    "{name} x={x}"
                );
                assert!(
                    words_equal(&lp, &big_e(&lp, x), &big_e(&lp, lp.right_inverse(x))),
                    "{name} x={x}"
                );
            }
        }
    }

    #[test]
    fn middle_inner_mapping_osborn_form() {
        let lp = kinyon16();
        // In an Osborn loop T_(x) = L_{x^λ} R_x; 16^λ = 10.
        assert!(words_equal(
            &lp,
            &word(&lp, "R:16,Li:16"),
            &word(&lp, "L:10,R:16")
        ));
        // 15 commutes with 16, so T_(16) fixes 15.
        assert_eq!(inner_t(el(&lp, 16)).evaluate(&lp, el(&lp, 15)).index(), 15);
        assert!(inner_t(lp.identity()).permutation(&lp).is_identity());
    }

    #[test]
    fn inner_mappings_fix_identity_on_corpus() {
        for (name, lp) in corpus() {
            let e = lp.identity();
            for x in lp.elements() {
                assert_eq!(inner_t(x).evaluate(&lp, e), e, "{name} T_({x})");
                for y in lp.elements() {
                    assert_eq!(inner_r(&lp, x, y).evaluate(&lp, e), e, "{name} R_({x},{y})");
                    assert_eq!(inner_l(&lp, x, y).evaluate(&lp, e), e, "{name} L_({x},{y})");
                }
                // R_(x,e) is the identity map.
                assert!(inner_r(&lp, x, e).permutation(&lp).is_identity(), "{name}");
            }
        }
    }

    #[test]
    fn word_syntax_round_trip_and_errors() {
        let lp = kinyon16();
        let w = word(&lp, "L:16,Li:10,R:3,Ri:5");
        assert_eq!(w.to_string(), "L:16,Li:10,R:3,Ri:5");
        assert_eq!(MappingWord::empty().to_string(), "I");
        assert_eq!(word(&lp, "I"), MappingWord::empty());
        assert!(MappingWord::parse("L:17", &lp).is_err());
        assert!(MappingWord::parse("Q:3", &lp).is_err());
        assert!(MappingWord::parse("L16", &lp).is_err());
    }

    proptest! {
        // A word followed by its formal inverse is the identity map, and
        // permutation composition matches word concatenation.
        #[test]
        fn word_inverse_cancels(gens in proptest::collection::vec((0u8..4, 1u16..=16), 0..8), y in 1usize..=16) {
            let lp = kinyon16();
            let w: MappingWord = gens.into_iter().map(|(k, a)| {
                let a = lp.element(a as usize).unwrap();
                match k {
                    0 => Generator::L(a),
                    1 => Generator::R(a),
                    2 => Generator::LInv(a),
                    _ => Generator::RInv(a),
                }
            }).collect();
            let y = lp.element(y).unwrap();
            prop_assert_eq!(w.concat(&w.inverse()).evaluate(&lp, y), y);
            let p = w.permutation(&lp);
            prop_assert_eq!(p.compose(&p.inverse()).is_identity(), true);
            prop_assert_eq!(p.apply(y), w.evaluate(&lp, y));
        }

        #[test]
        fn translations_are_bijections(a in 1usize..=16) {
            let lp = kinyon16();
            let a = lp.element(a).unwrap();
            // from_images validates bijectivity.
            for side in [Side::Left, Side::Right] {
                let p = translation(&lp, side, a);
                let images: Vec<usize> = lp.elements().map(|y| p.apply(y).index()).collect();
                prop_assert!(Permutation::from_images(images).is_ok());
            }
        }
    }
}
