//! Core diagram model: crossings, cyclic walks, Gauss-diagram extraction,
//! oriented smoothing, and the reverse/mirror/band-sum constructions.
//!
//! A diagram on a closed oriented surface of genus `g` is stored as one
//! cyclic walk of events. Passage events record the over/under visits to
//! the crossings; side events record transverse crossings of the `2g`
//! gate curves dual to the homology basis `e_1, ..., e_2g`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Identifier of a classical crossing. Ids are positive and need not be
/// consecutive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingId(pub u32);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Over,
    Under,
}

impl Layer {
    pub fn flip(self) -> Layer {
        match self {
            Layer::Over => Layer::Under,
            Layer::Under => Layer::Over,
        }
    }
}

/// A crossing sign (the local writhe).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One step of the walk.
///
/// `Side { basis, dir }` crosses the gate dual to basis vector `e_(basis+1)`
/// (0-based internally) with direction `dir`; it contributes `dir * e_basis`
/// to the homology class of the walk. Even basis indices are `a`-gates, odd
/// ones `b`-gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    Passage { id: CrossingId, layer: Layer },
    Side { basis: usize, dir: Sign },
}

impl Event {
    pub fn is_passage(&self) -> bool {
        matches!(self, Event::Passage { .. })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("crossing {id} appears twice as {layer:?}")]
    DuplicatePassage { id: CrossingId, layer: Layer },
    #[error("crossing {id} has only one passage")]
    UnpairedPassage { id: CrossingId },
    #[error("side index {basis} out of range for genus {genus}")]
    SideIndexOutOfRange { basis: usize, genus: u32 },
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("band sum requires equal genera ({0} vs {1})")]
    GenusMismatch(u32, u32),
    #[error("gap index {gap} out of range (walk has {gaps} gaps)")]
    GapOutOfRange { gap: usize, gaps: usize },
}

/// A knot diagram on the genus-`g` surface, encoded as one cyclic walk.
///
/// Invariants (enforced by [`SurfaceDiagram::new`]): every crossing id
/// occurs exactly once as an over-passage and once as an under-passage,
/// and side indices lie in `0..2g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDiagram {
    genus: u32,
    events: Vec<Event>,
    signs: BTreeMap<CrossingId, Sign>,
}

/// An event subsequence that closes up into a circle on the surface
/// (passages may reference crossings of the ambient diagram).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    pub events: Vec<Event>,
}

/// The two circles obtained by the oriented smoothing of one crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingPair {
    pub left: ClosedWalk,
    pub right: ClosedWalk,
}

impl SurfaceDiagram {
    /// Validates the event sequence and the sign assignment.
    pub fn new(
        genus: u32,
        events: Vec<Event>,
        signs: BTreeMap<CrossingId, Sign>,
    ) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<CrossingId, (bool, bool)> = BTreeMap::new();
        for ev in &events {
            match *ev {
                Event::Passage { id, layer } => {
                    let entry = seen.entry(id).or_insert((false, false));
                    let slot = match layer {
                        Layer::Over => &mut entry.0,
                        Layer::Under => &mut entry.1,
                    };
                    if *slot {
                        return Err(DiagramError::DuplicatePassage { id, layer });
                    }
                    *slot = true;
                }
                Event::Side { basis, .. } => {
                    if basis >= 2 * genus as usize {
                        return Err(DiagramError::SideIndexOutOfRange { basis, genus });
                    }
                }
            }
        }
        for (&id, &(over, under)) in &seen {
            if !(over && under) {
                return Err(DiagramError::UnpairedPassage { id });
            }
            if !signs.contains_key(&id) {
                return Err(DiagramError::UnpairedPassage { id });
            }
        }
        debug_assert_eq!(seen.len(), signs.len());
        Ok(SurfaceDiagram {
            genus,
            events,
            signs,
        })
    }

    pub fn empty(genus: u32) -> Self {
        SurfaceDiagram {
            genus,
            events: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.signs.keys().copied()
    }

    pub fn sign(&self, id: CrossingId) -> Result<Sign, DiagramError> {
        self.signs
            .get(&id)
            .copied()
            .ok_or(DiagramError::UnknownCrossing(id))
    }

    pub fn signs(&self) -> &BTreeMap<CrossingId, Sign> {
        &self.signs
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.signs.values().map(|s| s.value()).sum()
    }

    /// Positions of the over- and under-passage of `id` in the walk.
    pub fn passage_positions(&self, id: CrossingId) -> Result<(usize, usize), DiagramError> {
        if !self.signs.contains_key(&id) {
            return Err(DiagramError::UnknownCrossing(id));
        }
        let mut over = None;
        let mut under = None;
        for (i, ev) in self.events.iter().enumerate() {
            if let Event::Passage { id: pid, layer } = *ev {
                if pid == id {
                    match layer {
                        Layer::Over => over = Some(i),
                        Layer::Under => under = Some(i),
                    }
                }
            }
        }
        Ok((over.unwrap(), under.unwrap()))
    }

    /// Events strictly between positions `from` and `to` in cyclic walk order.
    fn segment(&self, from: usize, to: usize) -> Vec<Event> {
        let n = self.events.len();
        let mut out = Vec::new();
        let mut i = (from + 1) % n;
        while i != to {
            out.push(self.events[i]);
            i = (i + 1) % n;
        }
        out
    }

    /// Oriented smoothing at crossing `c`.
    ///
    /// The walk splits at the two passages of `c` into the under-to-over
    /// segment and the over-to-under segment. The right circle is the
    /// under-to-over segment for positive crossings and the over-to-under
    /// segment for negative ones; see `docs/conventions.md`.
    pub fn smooth(&self, c: CrossingId) -> Result<SmoothingPair, DiagramError> {
        let sign = self.sign(c)?;
        let (over, under) = self.passage_positions(c)?;
        let under_to_over = ClosedWalk {
            events: self.segment(under, over),
        };
        let over_to_under = ClosedWalk {
            events: self.segment(over, under),
        };
        Ok(match sign {
            Sign::Plus => SmoothingPair {
                right: under_to_over,
                left: over_to_under,
            },
            Sign::Minus => SmoothingPair {
                right: over_to_under,
                left: under_to_over,
            },
        })
    }

    /// The walk with reversed orientation: events in reverse order and all
    /// side directions negated. Layers and signs are unchanged.
    pub fn reverse_orientation(&self) -> SurfaceDiagram {
        let events = self
            .events
            .iter()
            .rev()
            .map(|ev| match *ev {
                Event::Side { basis, dir } => Event::Side {
                    basis,
                    dir: dir.flip(),
                },
                p => p,
            })
            .collect();
        SurfaceDiagram {
            genus: self.genus,
            events,
            signs: self.signs.clone(),
        }
    }

    /// The mirror diagram: every passage layer flipped and every crossing
    /// sign negated. Side events are unchanged.
    pub fn mirror(&self) -> SurfaceDiagram {
        let events = self
            .events
            .iter()
            .map(|ev| match *ev {
                Event::Passage { id, layer } => Event::Passage {
                    id,
                    layer: layer.flip(),
                },
                s => s,
            })
            .collect();
        let signs = self
            .signs
            .iter()
            .map(|(&id, &s)| (id, s.flip()))
            .collect();
        SurfaceDiagram {
            genus: self.genus,
            events,
            signs,
        }
    }

    /// The same diagram read from a different basepoint (`k` steps ahead).
    pub fn rotated(&self, k: usize) -> SurfaceDiagram {
        if self.events.is_empty() {
            return self.clone();
        }
        let n = self.events.len();
        let k = k % n;
        let mut events = Vec::with_capacity(n);
        events.extend_from_slice(&self.events[k..]);
        events.extend_from_slice(&self.events[..k]);
        SurfaceDiagram {
            genus: self.genus,
            events,
            signs: self.signs.clone(),
        }
    }

    /// Largest crossing id in use, or 0.
    pub fn max_crossing_id(&self) -> u32 {
        self.signs.keys().map(|c| c.0).max().unwrap_or(0)
    }
}

/// Splices `d2` into `d1`: the band joins the walks at gap `site1` of `d1`
/// (0..=len1) and gap `site2` of `d2`. The band itself is embedded away from
/// both diagrams, so no new crossings are introduced. Crossing ids of `d2`
/// are shifted past those of `d1` whenever they collide.
pub fn band_sum(
    d1: &SurfaceDiagram,
    d2: &SurfaceDiagram,
    site1: usize,
    site2: usize,
) -> Result<SurfaceDiagram, DiagramError> {
    if d1.genus != d2.genus {
        return Err(DiagramError::GenusMismatch(d1.genus, d2.genus));
    }
    let gaps1 = d1.events.len() + 1;
    if site1 >= gaps1 {
        return Err(DiagramError::GapOutOfRange {
            gap: site1,
            gaps: gaps1,
        });
    }
    let gaps2 = d2.events.len().max(1);
    if site2 >= gaps2 {
        return Err(DiagramError::GapOutOfRange {
            gap: site2,
            gaps: gaps2,
        });
    }

    let collide = d2.signs.keys().any(|id| d1.signs.contains_key(id));
    let shift = if collide { d1.max_crossing_id() } else { 0 };
    let remap = |id: CrossingId| CrossingId(id.0 + shift);

    let mut events = Vec::with_capacity(d1.events.len() + d2.events.len());
    events.extend_from_slice(&d1.events[..site1]);
    for i in 0..d2.events.len() {
        let ev = d2.events[(site2 + i) % d2.events.len()];
        events.push(match ev {
            Event::Passage { id, layer } => Event::Passage {
                id: remap(id),
                layer,
            },
            s => s,
        });
    }
    events.extend_from_slice(&d1.events[site1..]);

    let mut signs = d1.signs.clone();
    for (&id, &s) in &d2.signs {
        signs.insert(remap(id), s);
    }
    SurfaceDiagram::new(d1.genus, events, signs)
}

/// A signed, directed chord per crossing on a counterclockwise circle.
/// Chords run from the over-endpoint to the under-endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDiagram {
    chords: Vec<Chord>,
    slots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub id: CrossingId,
    pub sign: Sign,
    pub over_slot: usize,
    pub under_slot: usize,
}

/// Which way a chord crosses another, viewed along the crossed chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingDirection {
    LeftToRight,
    RightToLeft,
}

impl GaussDiagram {
    pub fn new(chords: Vec<Chord>, slots: usize) -> Self {
        GaussDiagram { chords, slots }
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn chord(&self, id: CrossingId) -> Option<&Chord> {
        self.chords.iter().find(|c| c.id == id)
    }

    /// True iff `slot` lies strictly inside the counterclockwise arc from
    /// `from` to `to`.
    fn in_ccw_arc(from: usize, to: usize, slot: usize, slots: usize) -> bool {
        if from == to {
            return false;
        }
        let rel = (slot + slots - from) % slots;
        let end = (to + slots - from) % slots;
        rel > 0 && rel < end
    }

    pub fn interleaves(&self, a: &Chord, b: &Chord) -> bool {
        let inside = Self::in_ccw_arc(a.over_slot, a.under_slot, b.over_slot, self.slots);
        let inside2 = Self::in_ccw_arc(a.over_slot, a.under_slot, b.under_slot, self.slots);
        inside != inside2
    }

    /// Crossing direction of `b` over `a`, for interleaved chords: `b` runs
    /// left to right iff its over-endpoint lies on the counterclockwise arc
    /// from `a`'s over-endpoint to `a`'s under-endpoint.
    pub fn direction_over(&self, a: &Chord, b: &Chord) -> CrossingDirection {
        if Self::in_ccw_arc(a.over_slot, a.under_slot, b.over_slot, self.slots) {
            CrossingDirection::LeftToRight
        } else {
            CrossingDirection::RightToLeft
        }
    }

    /// All chords interleaving `c`, with their crossing directions.
    pub fn crossing_chords(&self, c: &Chord) -> Vec<(&Chord, CrossingDirection)> {
        self.chords
            .iter()
            .filter(|d| d.id != c.id && self.interleaves(c, d))
            .map(|d| (d, self.direction_over(c, d)))
            .collect()
    }

    /// Reads a plain Gauss code such as `O1+O2+U1+U2+` (whitespace between
    /// tokens optional).
    pub fn from_code(code: &str) -> Result<GaussDiagram, GaussCodeError> {
        let mut slots_by_id: BTreeMap<CrossingId, (Option<usize>, Option<usize>, Sign)> =
            BTreeMap::new();
        let mut slot = 0usize;
        let mut rest = code.trim();
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let mut chars = rest.chars();
            let head = chars.next().unwrap();
            let layer = match head {
                'O' => Layer::Over,
                'U' => Layer::Under,
                _ => return Err(GaussCodeError::Malformed(rest.to_string())),
            };
            let digits: String = chars.clone().take_while(|c| c.is_ascii_digit()).collect();
            if digits.is_empty() {
                return Err(GaussCodeError::Malformed(rest.to_string()));
            }
            let id = CrossingId(
                digits
                    .parse::<u32>()
                    .map_err(|_| GaussCodeError::Malformed(rest.to_string()))?,
            );
            let after = &rest[1 + digits.len()..];
            let sign = match after.chars().next() {
                Some('+') => Sign::Plus,
                Some('-') => Sign::Minus,
                _ => return Err(GaussCodeError::Malformed(rest.to_string())),
            };
            let entry = slots_by_id.entry(id).or_insert((None, None, sign));
            if entry.2 != sign {
                return Err(GaussCodeError::SignMismatch(id));
            }
            let cell = match layer {
                Layer::Over => &mut entry.0,
                Layer::Under => &mut entry.1,
            };
            if cell.is_some() {
                return Err(GaussCodeError::DuplicatePassage(id));
            }
            *cell = Some(slot);
            slot += 1;
            rest = &after[1..];
        }
        let mut chords = Vec::new();
        for (id, (over, under, sign)) in slots_by_id {
            match (over, under) {
                (Some(o), Some(u)) => chords.push(Chord {
                    id,
                    sign,
                    over_slot: o,
                    under_slot: u,
                }),
                _ => return Err(GaussCodeError::UnpairedPassage(id)),
            }
        }
        Ok(GaussDiagram::new(chords, slot))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussCodeError {
    #[error("malformed gauss code near `{0}`")]
    Malformed(String),
    #[error("crossing {0} appears twice on the same layer")]
    DuplicatePassage(CrossingId),
    #[error("the two passages of crossing {0} carry different signs")]
    SignMismatch(CrossingId),
    #[error("crossing {0} has only one passage")]
    UnpairedPassage(CrossingId),
}

/// The Gauss diagram of a surface diagram: side events are dropped, the
/// remaining passages index the circle slots in walk order.
pub fn gauss_diagram(d: &SurfaceDiagram) -> GaussDiagram {
    let mut chords: BTreeMap<CrossingId, Chord> = BTreeMap::new();
    let mut slot = 0usize;
    for ev in d.events() {
        if let Event::Passage { id, layer } = *ev {
            let sign = d.sign(id).expect("validated diagram");
            let chord = chords.entry(id).or_insert(Chord {
                id,
                sign,
                over_slot: usize::MAX,
                under_slot: usize::MAX,
            });
            match layer {
                Layer::Over => chord.over_slot = slot,
                Layer::Under => chord.under_slot = slot,
            }
            slot += 1;
        }
    }
    GaussDiagram::new(chords.into_values().collect(), slot)
}
