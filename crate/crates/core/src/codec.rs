//! Textual diagram format.
//!
//! ```text
//! genus <g>
//! walk O1+ a1+ O2+ U1+ b1+ U2+
//! class 1 1
//! ```
//!
//! `O<id><s>` / `U<id><s>` are over/under passages (the sign is the crossing
//! writhe and must match between the two passages of one id). `a<i><s>` and
//! `b<i><s>` are side-crossing events through the i-th handle pair; `a<i>+`
//! contributes `+e_(2i-1)` and `b<i>+` contributes `+e_(2i)` to the walk
//! class. Tokenisation is whitespace-insensitive between tokens. Optional
//! `class` lines carry `2g` integers each.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::diagram::{CrossingId, DiagramError, Event, Layer, Sign, SurfaceDiagram};
use crate::homology::HomologyClass;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("missing `genus <g>` header")]
    MissingGenusHeader,
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("crossing {id} appears twice as {layer:?}")]
    DuplicatePassage { id: CrossingId, layer: Layer },
    #[error("the two passages of crossing {0} carry different signs")]
    SignMismatch(CrossingId),
    #[error("crossing {0} has only one passage")]
    UnpairedPassage(CrossingId),
    #[error("side index {index} out of range 1..={genus}")]
    SideIndexOutOfRange { index: u32, genus: u32 },
    #[error("class line has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("`{0}` is not an integer")]
    NonInteger(String),
}

/// A parsed file: the diagram plus any `class` lines it carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedFile {
    pub diagram: SurfaceDiagram,
    pub classes: Vec<HomologyClass>,
}

pub fn parse_diagram(text: &str) -> Result<SurfaceDiagram, CodecError> {
    Ok(parse_file(text)?.diagram)
}

pub fn parse_file(text: &str) -> Result<ParsedFile, CodecError> {
    let mut words = text.split_whitespace().peekable();
    match words.next() {
        Some("genus") => {}
        _ => return Err(CodecError::MissingGenusHeader),
    }
    let genus: u32 = words
        .next()
        .ok_or(CodecError::MissingGenusHeader)?
        .parse()
        .map_err(|_| CodecError::MissingGenusHeader)?;
    match words.next() {
        Some("walk") => {}
        Some(other) => return Err(CodecError::MalformedToken(other.to_string())),
        None => return Err(CodecError::MalformedToken(String::new())),
    }

    let mut events = Vec::new();
    let mut signs: BTreeMap<CrossingId, Sign> = BTreeMap::new();
    let mut seen: BTreeMap<CrossingId, (bool, bool)> = BTreeMap::new();
    for word in words.by_ref() {
        if word == "class" {
            break;
        }
        let (event, sign) = parse_token(word, genus)?;
        match event {
            Event::Passage { id, layer } => {
                let entry = seen.entry(id).or_insert((false, false));
                let slot = match layer {
                    Layer::Over => &mut entry.0,
                    Layer::Under => &mut entry.1,
                };
                if *slot {
                    return Err(CodecError::DuplicatePassage { id, layer });
                }
                *slot = true;
                let sign = sign.expect("passage token carries a sign");
                if let Some(&prev) = signs.get(&id) {
                    if prev != sign {
                        return Err(CodecError::SignMismatch(id));
                    }
                } else {
                    signs.insert(id, sign);
                }
            }
            Event::Side { .. } => {}
        }
        events.push(event);
    }
    for (&id, &(over, under)) in &seen {
        if !(over && under) {
            return Err(CodecError::UnpairedPassage(id));
        }
    }

    // Remaining words are class lines; `class` keywords separate them.
    let mut classes = Vec::new();
    let rank = 2 * genus as usize;
    let mut current: Option<Vec<BigInt>> = if text.split_whitespace().any(|w| w == "class") {
        Some(Vec::new())
    } else {
        None
    };
    for word in words {
        if word == "class" {
            if let Some(done) = current.take() {
                classes.push(finish_class(done, rank)?);
            }
            current = Some(Vec::new());
            continue;
        }
        let Some(cur) = current.as_mut() else {
            return Err(CodecError::MalformedToken(word.to_string()));
        };
        let value: BigInt = word
            .parse()
            .map_err(|_| CodecError::NonInteger(word.to_string()))?;
        cur.push(value);
    }
    if let Some(done) = current {
        classes.push(finish_class(done, rank)?);
    }

    let diagram = SurfaceDiagram::new(genus, events, signs).map_err(|e| match e {
        DiagramError::DuplicatePassage { id, layer } => CodecError::DuplicatePassage { id, layer },
        DiagramError::UnpairedPassage { id } => CodecError::UnpairedPassage(id),
        DiagramError::SideIndexOutOfRange { basis, genus } => CodecError::SideIndexOutOfRange {
            index: (basis / 2 + 1) as u32,
            genus,
        },
        other => panic!("unexpected validation error: {other}"),
    })?;
    Ok(ParsedFile { diagram, classes })
}

fn finish_class(coords: Vec<BigInt>, rank: usize) -> Result<HomologyClass, CodecError> {
    if coords.len() != rank {
        return Err(CodecError::WrongLength {
            expected: rank,
            got: coords.len(),
        });
    }
    Ok(HomologyClass::new(coords))
}

fn parse_token(word: &str, genus: u32) -> Result<(Event, Option<Sign>), CodecError> {
    let malformed = || CodecError::MalformedToken(word.to_string());
    let mut chars = word.chars();
    let head = chars.next().ok_or_else(malformed)?;
    let body: String = chars.collect();
    if body.len() < 2 {
        return Err(malformed());
    }
    let (digits, sign_str) = body.split_at(body.len() - 1);
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(malformed());
    }
    let number: u32 = digits.parse().map_err(|_| malformed())?;
    let sign = match sign_str {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        _ => return Err(malformed()),
    };
    match head {
        'O' | 'U' => {
            if number == 0 {
                return Err(malformed());
            }
            let layer = if head == 'O' { Layer::Over } else { Layer::Under };
            Ok((
                Event::Passage {
                    id: CrossingId(number),
                    layer,
                },
                Some(sign),
            ))
        }
        'a' | 'b' => {
            if number == 0 || number > genus {
                return Err(CodecError::SideIndexOutOfRange {
                    index: number,
                    genus,
                });
            }
            let basis = 2 * (number as usize - 1) + usize::from(head == 'b');
            Ok((Event::Side { basis, dir: sign }, None))
        }
        _ => Err(malformed()),
    }
}

/// Canonical text form; `parse_diagram(serialize_diagram(d))` reproduces `d`
/// event for event.
pub fn serialize_diagram(d: &SurfaceDiagram) -> String {
    let mut out = format!("genus {}\nwalk", d.genus());
    for ev in d.events() {
        out.push(' ');
        match *ev {
            Event::Passage { id, layer } => {
                let sign = d.sign(id).expect("validated diagram");
                let letter = match layer {
                    Layer::Over => 'O',
                    Layer::Under => 'U',
                };
                out.push(letter);
                out.push_str(&id.0.to_string());
                out.push(sign.symbol());
            }
            Event::Side { basis, dir } => {
                let letter = if basis % 2 == 0 { 'a' } else { 'b' };
                out.push(letter);
                out.push_str(&(basis / 2 + 1).to_string());
                out.push(dir.symbol());
            }
        }
    }
    out
}

/// Parses `--alpha`-style input: `2g` whitespace-separated integers.
pub fn parse_class(text: &str, genus: u32) -> Result<HomologyClass, CodecError> {
    let rank = 2 * genus as usize;
    let mut coords = Vec::new();
    for word in text.split_whitespace() {
        let value: BigInt = word
            .parse()
            .map_err(|_| CodecError::NonInteger(word.to_string()))?;
        coords.push(value);
    }
    finish_class(coords, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_walk_round_trips() {
        let d = parse_diagram("genus 0\nwalk").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.genus(), 0);
        assert_eq!(serialize_diagram(&d), "genus 0\nwalk");
    }

    #[test]
    fn single_kink() {
        let d = parse_diagram("genus 1\nwalk O1+ U1+").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(serialize_diagram(&d), "genus 1\nwalk O1+ U1+");
    }

    #[test]
    fn duplicate_passage_rejected() {
        assert_eq!(
            parse_diagram("genus 1\nwalk O1+ U1+ O1-"),
            Err(CodecError::DuplicatePassage {
                id: CrossingId(1),
                layer: Layer::Over
            })
        );
    }

    #[test]
    fn sign_mismatch_rejected() {
        assert_eq!(
            parse_diagram("genus 0\nwalk O1+ U1-"),
            Err(CodecError::SignMismatch(CrossingId(1)))
        );
    }

    #[test]
    fn unpaired_passage_rejected() {
        assert_eq!(
            parse_diagram("genus 0\nwalk O1+"),
            Err(CodecError::UnpairedPassage(CrossingId(1)))
        );
    }

    #[test]
    fn side_index_out_of_range_rejected() {
        assert_eq!(
            parse_diagram("genus 1\nwalk a2+"),
            Err(CodecError::SideIndexOutOfRange { index: 2, genus: 1 })
        );
        assert!(matches!(
            parse_diagram("genus 0\nwalk b1-"),
            Err(CodecError::SideIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn missing_header_rejected() {
        assert_eq!(
            parse_diagram("walk O1+ U1+"),
            Err(CodecError::MissingGenusHeader)
        );
        assert_eq!(parse_diagram(""), Err(CodecError::MissingGenusHeader));
    }

    #[test]
    fn malformed_tokens_rejected() {
        for bad in ["genus 1\nwalk X1+", "genus 1\nwalk O+", "genus 1\nwalk O1*",
                    "genus 1\nwalk O1", "genus 1\nwalk O0+"] {
            assert!(
                matches!(parse_diagram(bad), Err(CodecError::MalformedToken(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_diagram("genus 1\nwalk O1+   U1+\n  a1-").unwrap();
        let b = parse_diagram("genus 1\nwalk O1+ U1+ a1-").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn class_lines_parse() {
        let f = parse_file("genus 2\nwalk\nclass 1 0 0 -2\nclass 0 0 0 0").unwrap();
        assert_eq!(f.classes.len(), 2);
        assert_eq!(f.classes[0], HomologyClass::from_i64s(&[1, 0, 0, -2]));
    }

    #[test]
    fn class_input_errors() {
        assert_eq!(
            parse_class("1 0", 2),
            Err(CodecError::WrongLength { expected: 4, got: 2 })
        );
        assert_eq!(
            parse_class("1 x", 1),
            Err(CodecError::NonInteger("x".to_string()))
        );
        assert_eq!(
            parse_class("0 0", 1).unwrap(),
            HomologyClass::from_i64s(&[0, 0])
        );
        assert_eq!(
            parse_class("1 0 0 -2", 2).unwrap(),
            HomologyClass::from_i64s(&[1, 0, 0, -2])
        );
    }

    #[test]
    fn kishino_encoding_round_trips_token_for_token() {
        let text = "genus 2\nwalk O1+ a1+ U3- U1+ b1+ O3- O2+ a2+ U4- U2+ b2+ O4-";
        let d = parse_diagram(text).unwrap();
        assert_eq!(serialize_diagram(&d), text);
        assert_eq!(parse_diagram(&serialize_diagram(&d)).unwrap(), d);
    }
}
