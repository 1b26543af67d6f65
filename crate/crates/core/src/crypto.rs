//! The cryptographic-identity framework: functionals with component
//! factorizations, `CF_x` membership and subgroup checks, sender/receiver
//! enciphering, and the multi-terminal relay chain.
//!
//! A cryptographic functional fixes a key element `x` and packages a word
//! over the translations at `x`, `x^λ`, `x^ρ` whose induced map is the
//! identity on the loop. Splitting the word gives the sender's component
//! (applied letter by letter to encipher) and the receiver's component
//! (which undoes it). No security claim is attached to any of this; the
//! scheme is the structural mechanism only.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::loops::{Element, FiniteLoop, LoopError};
use crate::mappings::{Generator, MappingWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CryptoError {
    #[error("split index {k} out of range 1..{len}")]
    BadSplit { k: usize, len: usize },
    #[error("letter {0:?} is not in the codec")]
    UnknownLetter(char),
    #[error("element {0} is not in the codec")]
    UnknownElement(usize),
    #[error("chain does not fix codec element {0}")]
    BrokenChain(usize),
    #[error("sample word {index} does not fix the point {point}")]
    SampleNotInCf { index: usize, point: usize },
    #[error("malformed codec: {0}")]
    MalformedCodec(String),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// A letter ↔ element table. Injective in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codec {
    to_element: BTreeMap<char, Element>,
    to_letter: BTreeMap<Element, char>,
}

impl Codec {
    pub fn new(pairs: impl IntoIterator<Item = (char, Element)>) -> Result<Codec, CryptoError> {
        let mut to_element = BTreeMap::new();
        let mut to_letter = BTreeMap::new();
        for (ch, elem) in pairs {
            if to_element.insert(ch, elem).is_some() {
                return Err(CryptoError::MalformedCodec(format!(
                    "letter {ch:?} mapped twice"
                )));
            }
            if to_letter.insert(elem, ch).is_some() {
                return Err(CryptoError::MalformedCodec(format!(
                    "element {elem} mapped twice"
                )));
            }
        }
        Ok(Codec {
            to_element,
            to_letter,
        })
    }

    /// Parses the codec file format: one `<CHAR> <INDEX>` pair per line,
    /// `#` comments allowed.
    pub fn parse(text: &str, lp: &FiniteLoop) -> Result<Codec, CryptoError> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(ch), Some(idx), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(CryptoError::MalformedCodec(format!(
                    "expected `<CHAR> <INDEX>` on line {line:?}"
                )));
            };
            let mut chars = ch.chars();
            let (Some(ch), None) = (chars.next(), chars.next()) else {
                return Err(CryptoError::MalformedCodec(format!(
                    "expected a single character, found {ch:?}"
                )));
            };
            let idx: usize = idx.parse().map_err(|_| {
                CryptoError::MalformedCodec(format!("bad element index on line {line:?}"))
            })?;
            pairs.push((ch, lp.element(idx)?));
        }
        Codec::new(pairs)
    }

    /// The worked-example codec: B↔7, N↔9, O↔11, R↔12, S↔13. Needs a loop
    /// of order at least 13.
    pub fn example(lp: &FiniteLoop) -> Result<Codec, CryptoError> {
        Codec::new(
            [('B', 7), ('N', 9), ('O', 11), ('R', 12), ('S', 13)]
                .into_iter()
                .map(|(ch, i)| Ok((ch, lp.element(i)?)))
                .collect::<Result<Vec<_>, LoopError>>()?,
        )
    }

    pub fn element_for(&self, ch: char) -> Result<Element, CryptoError> {
        self.to_element
            .get(&ch)
            .copied()
            .ok_or(CryptoError::UnknownLetter(ch))
    }

    pub fn letter_for(&self, elem: Element) -> Result<char, CryptoError> {
        self.to_letter
            .get(&elem)
            .copied()
            .ok_or(CryptoError::UnknownElement(elem.index()))
    }

    /// Letters in ascending order.
    pub fn letters(&self) -> impl Iterator<Item = (char, Element)> + '_ {
        self.to_element.iter().map(|(&c, &e)| (c, e))
    }
}

/// A named key-parametrized mapping word together with its canonical
/// component factorization. The word is the concatenation of the
/// components, and the declared degree is the generator count of the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CryptoFunctional {
    name: String,
    key: Element,
    word: MappingWord,
    components: Vec<MappingWord>,
}

impl CryptoFunctional {
    pub fn new(
        name: impl Into<String>,
        key: Element,
        components: Vec<MappingWord>,
    ) -> CryptoFunctional {
        let word = components
            .iter()
            .fold(MappingWord::empty(), |acc, c| acc.concat(c));
        CryptoFunctional {
            name: name.into(),
            key,
            word,
            components,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn key(&self) -> Element {
        self.key
    }

    pub fn word(&self) -> &MappingWord {
        &self.word
    }

    pub fn components(&self) -> &[MappingWord] {
        &self.components
    }

    /// The degree: generator count of the canonical word.
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// The degree-2 functional of the cross inverse property:
/// `F(x) = L_x R_{x^ρ}`.
pub fn cf_cip(lp: &FiniteLoop, x: Element) -> CryptoFunctional {
    CryptoFunctional::new(
        "cip",
        x,
        vec![
            MappingWord::new(vec![Generator::L(x)]),
            MappingWord::new(vec![Generator::R(lp.right_inverse(x))]),
        ],
    )
}

/// The degree-4 functional of the double left inverse property:
/// `F(x) = L_x L_{x^λ} R_{x^λ} R_x`, canonically split into
/// `G₁ = L_x L_{x^λ}` and `G₂ = R_{x^λ} R_x`.
pub fn cf_dlip(lp: &FiniteLoop, x: Element) -> CryptoFunctional {
    let lam = lp.left_inverse(x);
    CryptoFunctional::new(
        "dlip",
        x,
        vec![
            MappingWord::new(vec![Generator::L(x), Generator::L(lam)]),
            MappingWord::new(vec![Generator::R(lam), Generator::R(x)]),
        ],
    )
}

/// The degree-6 functional of the two-variable isotope identity:
/// `F(x) = R_x L_x⁻¹ R_x⁻¹ R_{x^λ} R_x L_x`, canonically split into
/// `F₁ = R_x L_x⁻¹ R_x⁻¹` and `F₂ = R_{x^λ} R_x L_x`.
pub fn cf_osi011(lp: &FiniteLoop, x: Element) -> CryptoFunctional {
    let lam = lp.left_inverse(x);
    CryptoFunctional::new(
        "osi011",
        x,
        vec![
            MappingWord::new(vec![
                Generator::R(x),
                Generator::LInv(x),
                Generator::RInv(x),
            ]),
            MappingWord::new(vec![Generator::R(lam), Generator::R(x), Generator::L(x)]),
        ],
    )
}

/// Whether the functional's word is the identity map on the whole loop
/// (the defining condition of a cryptographic identity).
pub fn is_ci(lp: &FiniteLoop, f: &CryptoFunctional) -> bool {
    lp.elements().all(|y| f.word().evaluate(lp, y) == y)
}

/// `F ∈ CF_x`: the word fixes the point `x`.
pub fn cf_membership(lp: &FiniteLoop, word: &MappingWord, x: Element) -> bool {
    word.evaluate(lp, x) == x
}

/// Group-axiom spot checks for `CF_x` on a finite sample of member words:
/// identity, pairwise closure under concatenation, and formal inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfGroupReport {
    pub point: Element,
    pub sample_size: usize,
    pub closure_pairs: usize,
    pub identity_ok: bool,
    pub closure_ok: bool,
    pub inverses_ok: bool,
}

impl CfGroupReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok && self.closure_ok && self.inverses_ok
    }
}

pub fn cf_group_axioms(
    lp: &FiniteLoop,
    x: Element,
    sample: &[MappingWord],
) -> Result<CfGroupReport, CryptoError> {
    for (index, w) in sample.iter().enumerate() {
        if !cf_membership(lp, w, x) {
            return Err(CryptoError::SampleNotInCf {
                index,
                point: x.index(),
            });
        }
    }
    let identity_ok = cf_membership(lp, &MappingWord::empty(), x);
    let mut closure_ok = true;
    let mut closure_pairs = 0;
    for a in sample {
        for b in sample {
            closure_pairs += 1;
            if !cf_membership(lp, &a.concat(b), x) {
                closure_ok = false;
            }
        }
    }
    let inverses_ok = sample.iter().all(|w| cf_membership(lp, &w.inverse(), x));
    Ok(CfGroupReport {
        point: x,
        sample_size: sample.len(),
        closure_pairs,
        identity_ok,
        closure_ok,
        inverses_ok,
    })
}

/// Cuts the functional's word after `k` generators: the prefix is the
/// sender's functional component, the suffix the receiver's. Any cut with
/// `1 ≤ k < degree` is allowed; components are not unique.
pub fn split(f: &CryptoFunctional, k: usize) -> Result<(MappingWord, MappingWord), CryptoError> {
    let len = f.word().len();
    if k < 1 || k >= len {
        return Err(CryptoError::BadSplit { k, len });
    }
    let gens = f.word().generators();
    Ok((
        MappingWord::new(gens[..k].to_vec()),
        MappingWord::new(gens[k..].to_vec()),
    ))
}

/// Applies the sender's component to each letter of the plaintext.
pub fn encipher(
    lp: &FiniteLoop,
    codec: &Codec,
    sfc: &MappingWord,
    plaintext: &str,
) -> Result<Vec<Element>, CryptoError> {
    plaintext
        .chars()
        .map(|ch| Ok(sfc.evaluate(lp, codec.element_for(ch)?)))
        .collect()
}

/// Applies the receiver's component to each ciphertext element.
pub fn decipher_elements(
    lp: &FiniteLoop,
    rfc: &MappingWord,
    ciphertext: &[Element],
) -> Vec<Element> {
    ciphertext.iter().map(|&y| rfc.evaluate(lp, y)).collect()
}

/// Deciphers and maps the recovered elements back through the codec.
pub fn decipher(
    lp: &FiniteLoop,
    codec: &Codec,
    rfc: &MappingWord,
    ciphertext: &[Element],
) -> Result<String, CryptoError> {
    decipher_elements(lp, rfc, ciphertext)
        .into_iter()
        .map(|e| codec.letter_for(e))
        .collect()
}

/// A relay chain: terminal `i` holds component `F_i`; the concatenation of
/// all components must fix every codec element. The key is carried only to
/// flag plaintext letters that coincide with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainConfig {
    pub components: Vec<MappingWord>,
    pub key: Option<Element>,
}

impl ChainConfig {
    pub fn terminals(&self) -> usize {
        self.components.len()
    }
}

/// The element sequence present on the wire after one hop, with per-letter
/// exposure: position `j` is exposed when the prefix `F₁…F_i` fixes the
/// original element, i.e. the attacker between hops sees the plaintext
/// element itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hop {
    pub component: MappingWord,
    pub elements: Vec<Element>,
    pub exposed: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTrace {
    pub source: Vec<Element>,
    pub hops: Vec<Hop>,
    /// Positions whose plaintext element equals the configured key.
    pub key_collisions: Vec<usize>,
}

impl ChainTrace {
    /// The element sequence at the final terminal.
    pub fn received(&self) -> &[Element] {
        self.hops
            .last()
            .map(|h| h.elements.as_slice())
            .unwrap_or(&self.source)
    }
}

pub fn chain_transmit(
    lp: &FiniteLoop,
    config: &ChainConfig,
    codec: &Codec,
    plaintext: &str,
) -> Result<ChainTrace, CryptoError> {
    let full = config
        .components
        .iter()
        .fold(MappingWord::empty(), |acc, c| acc.concat(c));
    for (_, m) in codec.letters() {
        if full.evaluate(lp, m) != m {
            return Err(CryptoError::BrokenChain(m.index()));
        }
    }
    let source = plaintext
        .chars()
        .map(|ch| codec.element_for(ch))
        .collect::<Result<Vec<_>, _>>()?;
    let key_collisions = match config.key {
        Some(k) => source
            .iter()
            .enumerate()
            .filter(|(_, &m)| m == k)
            .map(|(j, _)| j)
            .collect(),
        None => Vec::new(),
    };
    let mut current = source.clone();
    let mut hops = Vec::with_capacity(config.components.len());
    for component in &config.components {
        current = current.iter().map(|&y| component.evaluate(lp, y)).collect();
        let exposed = current
            .iter()
            .zip(&source)
            .map(|(cur, orig)| cur == orig)
            .collect();
        hops.push(Hop {
            component: component.clone(),
            elements: current.clone(),
            exposed,
        });
    }
    Ok(ChainTrace {
        source,
        hops,
        key_collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{corpus_loop, kinyon16};
    use crate::mappings::inner_t;
    use crate::properties::centralizer;

    fn el(lp: &FiniteLoop, i: usize) -> Element {
        lp.element(i).unwrap()
    }

    fn indices(elems: &[Element]) -> Vec<usize> {
        elems.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn canonical_functionals() {
        let lp = kinyon16();
        let x = el(&lp, 16);
        let dlip = cf_dlip(&lp, x);
        assert_eq!(dlip.degree(), 4);
        assert_eq!(dlip.word().to_string(), "L:16,L:10,R:10,R:16");
        let osi = cf_osi011(&lp, x);
        assert_eq!(osi.degree(), 6);
        assert_eq!(osi.word().to_string(), "R:16,Li:16,Ri:16,R:10,R:16,L:16");
        assert_eq!(osi.word().evaluate(&lp, el(&lp, 7)).index(), 7);
        let cip = cf_cip(&lp, x);
        assert_eq!(cip.degree(), 2);
        assert_eq!(cip.word().to_string(), "L:16,R:12");
        // Components concatenate back to the word.
        for f in [&dlip, &osi, &cip] {
            let joined = f
                .components()
                .iter()
                .fold(MappingWord::empty(), |acc, c| acc.concat(c));
            assert_eq!(&joined, f.word());
        }
    }

    #[test]
    fn dlip_and_osi011_are_cis_on_kinyon16() {
        let lp = kinyon16();
        for x in lp.elements() {
            assert!(is_ci(&lp, &cf_dlip(&lp, x)), "dlip at {x}");
            assert!(is_ci(&lp, &cf_osi011(&lp, x)), "osi011 at {x}");
        }
    }

    #[test]
    fn cip_functional_on_abelian_groups_and_failure_witness() {
        let z5 = corpus_loop("z5").unwrap();
        for x in z5.elements() {
            assert!(is_ci(&z5, &cf_cip(&z5, x)));
        }
        // S3 is not CIP: some cf_cip fails to be a CI.
        let s3 = corpus_loop("s3").unwrap();
        assert!(s3.elements().any(|x| !is_ci(&s3, &cf_cip(&s3, x))));
    }

    #[test]
    fn dlip_functional_fails_on_some_small_loop_with_witness() {
        // Some order-5 loop violates the degree-4 identity; the first
        // moved point witnesses it and re-fails.
        let found = crate::enumerate::enumerate_loops(5)
            .unwrap()
            .find_map(|lp| {
                lp.elements().find_map(|x| {
                    let f = cf_dlip(&lp, x);
                    let moved = lp.elements().find(|&y| f.word().evaluate(&lp, y) != y);
                    moved.map(|y| (lp.clone(), f, y))
                })
            });
        let (lp, f, y) = found.expect("a DLIP violation exists at order 5");
        assert!(!is_ci(&lp, &f));
        assert!(!crate::isotopy::dlip_holds_at(&lp, f.key(), y));
    }

    #[test]
    fn membership_equivalences_from_the_local_sets() {
        let lp = kinyon16();
        for a in lp.elements() {
            let t = inner_t(a);
            let c_a = centralizer(&lp, a);
            for z in lp.elements() {
                assert_eq!(cf_membership(&lp, &t, z), c_a.contains(&z));
            }
        }
        // The identity word is in CF_x for every x.
        for x in lp.elements() {
            assert!(cf_membership(&lp, &MappingWord::empty(), x));
        }
    }

    #[test]
    fn group_axioms_on_inner_t_sample() {
        let lp = kinyon16();
        let x = el(&lp, 9);
        let mut sample: Vec<MappingWord> = lp
            .elements()
            .filter(|&a| cf_membership(&lp, &inner_t(a), x))
            .map(inner_t)
            .collect();
        let inverses: Vec<MappingWord> = sample.iter().map(|w| w.inverse()).collect();
        sample.extend(inverses);
        let report = cf_group_axioms(&lp, x, &sample).unwrap();
        assert!(report.all_ok());
        assert_eq!(
            report.closure_pairs,
            report.sample_size * report.sample_size
        );

        // The singleton sample of just the identity word passes.
        let trivial = cf_group_axioms(&lp, x, &[MappingWord::empty()]).unwrap();
        assert!(trivial.all_ok());

        // A word moving x is rejected up front.
        let moving = MappingWord::new(vec![Generator::R(el(&lp, 2))]);
        assert!(matches!(
            cf_group_axioms(&lp, x, &[moving]),
            Err(CryptoError::SampleNotInCf { index: 0, .. })
        ));
    }

    #[test]
    fn split_bounds() {
        let lp = kinyon16();
        let f = cf_dlip(&lp, el(&lp, 16));
        let (sfc, rfc) = split(&f, 2).unwrap();
        assert_eq!(sfc.to_string(), "L:16,L:10");
        assert_eq!(rfc.to_string(), "R:10,R:16");
        assert!(matches!(split(&f, 0), Err(CryptoError::BadSplit { .. })));
        assert!(matches!(split(&f, 4), Err(CryptoError::BadSplit { .. })));
        let osi = cf_osi011(&lp, el(&lp, 16));
        let (s3, r3) = split(&osi, 3).unwrap();
        assert_eq!(s3.to_string(), "R:16,Li:16,Ri:16");
        assert_eq!(r3.to_string(), "R:10,R:16,L:16");
    }

    #[test]
    fn worked_example_encode_decode() {
        let lp = kinyon16();
        let codec = Codec::example(&lp).unwrap();
        let f = cf_dlip(&lp, el(&lp, 16));
        let (sfc, rfc) = split(&f, 2).unwrap();
        let cipher = encipher(&lp, &codec, &sfc, "OSBORN").unwrap();
        assert_eq!(indices(&cipher), vec![9, 16, 7, 9, 10, 12]);
        let decoded = decipher_elements(&lp, &rfc, &cipher);
        assert_eq!(indices(&decoded), vec![11, 13, 7, 11, 12, 9]);
        assert_eq!(decipher(&lp, &codec, &rfc, &cipher).unwrap(), "OSBORN");
        // Empty plaintext → empty ciphertext.
        assert!(encipher(&lp, &codec, &sfc, "").unwrap().is_empty());
        assert!(matches!(
            encipher(&lp, &codec, &sfc, "OSBORNQ"),
            Err(CryptoError::UnknownLetter('Q'))
        ));
    }

    #[test]
    fn round_trip_for_all_keys_and_both_functionals() {
        let lp = kinyon16();
        let codec = Codec::example(&lp).unwrap();
        let msg = "SORBON";
        for x in lp.elements() {
            for f in [cf_dlip(&lp, x), cf_osi011(&lp, x)] {
                for k in 1..f.degree() {
                    let (sfc, rfc) = split(&f, k).unwrap();
                    let cipher = encipher(&lp, &codec, &sfc, msg).unwrap();
                    assert_eq!(decipher(&lp, &codec, &rfc, &cipher).unwrap(), msg);
                }
            }
        }
    }

    #[test]
    fn round_trip_on_every_corpus_loop() {
        // Both functionals are CIs on every universal Osborn loop in the
        // corpus (all of it), so enciphering round-trips for every key and
        // every cut.
        for (name, lp) in crate::enumerate::corpus() {
            let k = lp.order().min(6);
            let codec =
                Codec::new((0..k).map(|i| ((b'A' + i as u8) as char, lp.element(i + 1).unwrap())))
                    .unwrap();
            let msg: String = (0..k).rev().map(|i| (b'A' + i as u8) as char).collect();
            for x in lp.elements() {
                for f in [cf_dlip(&lp, x), cf_osi011(&lp, x)] {
                    assert!(is_ci(&lp, &f), "{name} {} at {x}", f.name());
                    for cut in 1..f.degree() {
                        let (sfc, rfc) = split(&f, cut).unwrap();
                        let cipher = encipher(&lp, &codec, &sfc, &msg).unwrap();
                        assert_eq!(
                            decipher(&lp, &codec, &rfc, &cipher).unwrap(),
                            msg,
                            "{name} {} key {x} cut {cut}",
                            f.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn component_membership_is_tied_between_the_two_parts() {
        // With F = (F₁,F₂) a CI at x: F₁ ∈ CF_x ⟺ F₂ ∈ CF_x,
        // over every split of both canonical functionals and every x.
        let lp = kinyon16();
        for x in lp.elements() {
            for f in [cf_dlip(&lp, x), cf_osi011(&lp, x)] {
                for k in 1..f.degree() {
                    let (a, b) = split(&f, k).unwrap();
                    assert_eq!(
                        cf_membership(&lp, &a, x),
                        cf_membership(&lp, &b, x),
                        "x={x} k={k} {}",
                        f.name()
                    );
                }
            }
        }
    }

    #[test]
    fn last_part_fixed_by_prefix_parts() {
        // If the first n−1 parts of a CI all fix x, so does the last:
        // checked over every three-part cut of both canonical functionals.
        let lp = kinyon16();
        for x in lp.elements() {
            for f in [cf_dlip(&lp, x), cf_osi011(&lp, x)] {
                let gens = f.word().generators();
                let d = gens.len();
                for i in 1..(d - 1) {
                    for j in (i + 1)..d {
                        let parts = [
                            MappingWord::new(gens[..i].to_vec()),
                            MappingWord::new(gens[i..j].to_vec()),
                            MappingWord::new(gens[j..].to_vec()),
                        ];
                        let prefix_fixed = parts[..2].iter().all(|p| cf_membership(&lp, p, x));
                        if prefix_fixed {
                            assert!(cf_membership(&lp, &parts[2], x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chain_reproduces_encode_decode() {
        let lp = kinyon16();
        let codec = Codec::example(&lp).unwrap();
        let x = el(&lp, 16);
        let f = cf_dlip(&lp, x);
        let config = ChainConfig {
            components: f.components().to_vec(),
            key: Some(x),
        };
        let trace = chain_transmit(&lp, &config, &codec, "OSBORN").unwrap();
        assert_eq!(indices(&trace.source), vec![11, 13, 7, 11, 12, 9]);
        assert_eq!(indices(&trace.hops[0].elements), vec![9, 16, 7, 9, 10, 12]);
        assert_eq!(indices(&trace.hops[1].elements), vec![11, 13, 7, 11, 12, 9]);
        assert!(trace.hops[1].exposed.iter().all(|&b| b));
        assert!(trace.key_collisions.is_empty());
    }

    #[test]
    fn four_terminal_chain_recovers_plaintext() {
        let lp = kinyon16();
        let codec = Codec::example(&lp).unwrap();
        let gens = cf_dlip(&lp, el(&lp, 16)).word().generators().to_vec();
        let config = ChainConfig {
            components: gens
                .into_iter()
                .map(|g| MappingWord::new(vec![g]))
                .collect(),
            key: None,
        };
        let trace = chain_transmit(&lp, &config, &codec, "OSBORN").unwrap();
        assert_eq!(trace.hops.len(), 4);
        assert_eq!(trace.received(), trace.source.as_slice());
        // B stays exposed after hop 1: 7 is fixed by L(16)L(10).
        assert!(trace.hops[1].exposed[2]);
    }

    #[test]
    fn identity_chain_is_fully_exposed_and_broken_chain_detected() {
        let lp = kinyon16();
        let codec = Codec::example(&lp).unwrap();
        let config = ChainConfig {
            components: vec![MappingWord::empty(), MappingWord::empty()],
            key: None,
        };
        let trace = chain_transmit(&lp, &config, &codec, "OSBORN").unwrap();
        for hop in &trace.hops {
            assert!(hop.exposed.iter().all(|&b| b));
        }
        let broken = ChainConfig {
            components: vec![MappingWord::new(vec![Generator::R(el(&lp, 2))])],
            key: None,
        };
        assert!(matches!(
            chain_transmit(&lp, &broken, &codec, "OSBORN"),
            Err(CryptoError::BrokenChain(_))
        ));
    }

    #[test]
    fn key_collision_is_flagged() {
        let lp = kinyon16();
        let codec = Codec::example(&lp).unwrap();
        let key = el(&lp, 13); // S ↔ 13
        let f = cf_dlip(&lp, key);
        let config = ChainConfig {
            components: f.components().to_vec(),
            key: Some(key),
        };
        let trace = chain_transmit(&lp, &config, &codec, "OSBORN").unwrap();
        assert_eq!(trace.key_collisions, vec![1]); // the S at position 1
        assert_eq!(trace.received(), trace.source.as_slice());
    }

    #[test]
    fn codec_parsing() {
        let lp = kinyon16();
        let codec = Codec::parse("# demo\nB 7\nN 9\nO 11\nR 12\nS 13\n", &lp).unwrap();
        assert_eq!(codec, Codec::example(&lp).unwrap());
        assert!(Codec::parse("B 7\nB 9\n", &lp).is_err());
        assert!(Codec::parse("B 7\nN 7\n", &lp).is_err());
        assert!(Codec::parse("B 99\n", &lp).is_err());
        assert!(Codec::parse("BB 7\n", &lp).is_err());
        assert!(matches!(
            codec.letter_for(el(&lp, 1)),
            Err(CryptoError::UnknownElement(1))
        ));
    }
}
