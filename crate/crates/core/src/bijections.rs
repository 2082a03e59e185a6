//! Executable bijections behind the counting identities for `w(n,k)` and the
//! diagonal sums.
//!
//! Every map implements [`Bijection`]: it can enumerate its domain and
//! codomain, map in both directions, and reject inputs outside its declared
//! sets. [`certify`] checks a map exhaustively (injective, surjective, and both
//! round trips).
//!
//! Multiset unions such as `2W(n-3,0)` are represented with explicit copy tags
//! on [`TaggedComposition`].
//!
//! Positions of water cells are always read off [`water_levels`], never
//! pattern-matched from part sequences.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::compositions::{
    conjugate, enumerate, is_increasable, water_cells, water_levels, Composition, FamilyKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("{element} is outside the domain: {reason}")]
    OutsideDomain { element: String, reason: String },
    #[error("copy tag {tag} out of range; this side has {multiplicity} copies")]
    BadTag { tag: usize, multiplicity: usize },
    #[error("{0} is the excluded element of its copy")]
    Excluded(String),
    #[error("conjugate of {0} has an internal run of 1s of odd length")]
    OddInternalRun(String),
}

fn outside(element: &impl fmt::Display, reason: impl Into<String>) -> BijectionError {
    BijectionError::OutsideDomain {
        element: element.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// A composition together with the copy of a multiset union it belongs to.
/// Tags are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedComposition {
    pub composition: Composition,
    pub copy_tag: usize,
}

impl TaggedComposition {
    pub fn new(composition: Composition, copy_tag: usize) -> Self {
        TaggedComposition {
            composition,
            copy_tag,
        }
    }
}

impl fmt::Display for TaggedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.composition, self.copy_tag)
    }
}

/// Partition into parts 1 in two colors and parts 2 in `k + 1` colors, stored
/// as color multiplicities (colored parts are unordered, so the counts are the
/// canonical form).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPartition {
    /// Multiplicities of `1_1` and `1_2`.
    pub ones: [u32; 2],
    /// Multiplicities of `2_1 ..= 2_{k+1}`.
    pub twos: Vec<u32>,
}

impl ColoredPartition {
    pub fn new(ones: [u32; 2], twos: Vec<u32>) -> Result<Self, BijectionError> {
        if twos.is_empty() {
            return Err(BijectionError::Parameters(
                "a colored partition needs at least one color of 2".into(),
            ));
        }
        Ok(ColoredPartition { ones, twos })
    }

    /// The water-cell parameter `k`: there are `k + 1` colors of 2.
    pub fn k(&self) -> usize {
        self.twos.len() - 1
    }

    pub fn weight(&self) -> u64 {
        u64::from(self.ones[0])
            + u64::from(self.ones[1])
            + 2 * self.twos.iter().map(|&t| u64::from(t)).sum::<u64>()
    }
}

/// Nonincreasing list of colored parts, e.g. `(2_1,2_3,1_1,1_2)`. With a single
/// color of 2 the subscript on 2 is dropped.
impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (color, &count) in self.twos.iter().enumerate() {
            for _ in 0..count {
                parts.push(if self.twos.len() == 1 {
                    "2".to_string()
                } else {
                    format!("2_{}", color + 1)
                });
            }
        }
        for (color, &count) in self.ones.iter().enumerate() {
            for _ in 0..count {
                parts.push(format!("1_{}", color + 1));
            }
        }
        write!(f, "({})", parts.join(","))
    }
}

/// An invertible map between two finite sets that can enumerate both sides.
pub trait Bijection {
    type Domain: Clone + Ord + fmt::Debug + fmt::Display;
    type Codomain: Clone + Ord + fmt::Debug + fmt::Display;

    /// Heading such as `W(6,0) <-> W(5,0) u W^i(5,0)`.
    fn title(&self) -> String;
    fn domain(&self) -> Vec<Self::Domain>;
    fn codomain(&self) -> Vec<Self::Codomain>;
    fn forward(&self, x: &Self::Domain) -> Result<Self::Codomain, BijectionError>;
    fn backward(&self, y: &Self::Codomain) -> Result<Self::Domain, BijectionError>;
    /// Name of the set an element of the domain belongs to.
    fn domain_label(&self, x: &Self::Domain) -> String;
    fn codomain_label(&self, y: &Self::Codomain) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub title: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificationError {
    #[error("{title}: forward map failed on {element}: {error}")]
    ForwardFailed {
        title: String,
        element: String,
        error: BijectionError,
    },
    #[error("{title}: backward map failed on {element}: {error}")]
    BackwardFailed {
        title: String,
        element: String,
        error: BijectionError,
    },
    #[error("{title}: image {image} of {element} is not in the codomain")]
    ImageOutsideCodomain {
        title: String,
        element: String,
        image: String,
    },
    #[error("{title}: {first} and {second} both map to {image}")]
    NotInjective {
        title: String,
        first: String,
        second: String,
        image: String,
    },
    #[error("{title}: {missing} is not hit")]
    NotSurjective { title: String, missing: String },
    #[error("{title}: round trip from {start} returned {end}")]
    RoundTrip {
        title: String,
        start: String,
        end: String,
    },
}

/// Exhaustively checks that `map` is a bijection between its enumerated
/// domain and codomain, with `backward` its two-sided inverse.
pub fn certify<B: Bijection>(map: &B) -> Result<Certificate, CertificationError> {
    let title = map.title();
    let domain = map.domain();
    let codomain = map.codomain();
    let codomain_set: std::collections::BTreeSet<_> = codomain.iter().cloned().collect();

    let mut preimages: BTreeMap<B::Codomain, B::Domain> = BTreeMap::new();
    for x in &domain {
        let y = map
            .forward(x)
            .map_err(|error| CertificationError::ForwardFailed {
                title: title.clone(),
                element: x.to_string(),
                error,
            })?;
        if !codomain_set.contains(&y) {
            return Err(CertificationError::ImageOutsideCodomain {
                title,
                element: x.to_string(),
                image: y.to_string(),
            });
        }
        if let Some(previous) = preimages.insert(y.clone(), x.clone()) {
            return Err(CertificationError::NotInjective {
                title,
                first: previous.to_string(),
                second: x.to_string(),
                image: y.to_string(),
            });
        }
        let back = map
            .backward(&y)
            .map_err(|error| CertificationError::BackwardFailed {
                title: title.clone(),
                element: y.to_string(),
                error,
            })?;
        if &back != x {
            return Err(CertificationError::RoundTrip {
                title,
                start: x.to_string(),
                end: back.to_string(),
            });
        }
    }
    for y in &codomain {
        if !preimages.contains_key(y) {
            return Err(CertificationError::NotSurjective {
                title,
                missing: y.to_string(),
            });
        }
        let x = map
            .backward(y)
            .map_err(|error| CertificationError::BackwardFailed {
                title: title.clone(),
                element: y.to_string(),
                error,
            })?;
        let again = map
            .forward(&x)
            .map_err(|error| CertificationError::ForwardFailed {
                title: title.clone(),
                element: x.to_string(),
                error,
            })?;
        if &again != y {
            return Err(CertificationError::RoundTrip {
                title,
                start: y.to_string(),
                end: again.to_string(),
            });
        }
    }
    Ok(Certificate {
        title,
        size: domain.len(),
    })
}

/// Domain elements paired with their images.
pub type MappingTable<B> = Vec<(<B as Bijection>::Domain, <B as Bijection>::Codomain)>;

/// Every domain element with its image, in domain enumeration order.
pub fn mapping_table<B: Bijection>(map: &B) -> Result<MappingTable<B>, BijectionError> {
    map.domain()
        .into_iter()
        .map(|x| map.forward(&x).map(|y| (x, y)))
        .collect()
}

/// `W(n,k)` in lexicographic order.
pub fn water_set(n: usize, k: usize) -> Vec<Composition> {
    enumerate(FamilyKind::Parts12, n as u32)
        .filter(|c| water_cells(c) == k as u64)
        .collect()
}

fn check_w(c: &Composition, n: usize, k: usize) -> Result<(), BijectionError> {
    if !c.is_member_of(FamilyKind::Parts12) {
        return Err(outside(c, "parts must be 1 or 2"));
    }
    if c.size() != n as u64 {
        return Err(outside(c, format!("expected a composition of {n}")));
    }
    let water = water_cells(c);
    if water != k as u64 {
        return Err(outside(c, format!("has {water} water cells, expected {k}")));
    }
    Ok(())
}

fn check_tag(tag: usize, multiplicity: usize) -> Result<(), BijectionError> {
    if tag >= multiplicity {
        return Err(BijectionError::BadTag { tag, multiplicity });
    }
    Ok(())
}

fn tagged(parts: Vec<u32>, tag: usize) -> TaggedComposition {
    TaggedComposition::new(Composition::new(parts).expect("parts stay positive"), tag)
}

fn tag_all(set: Vec<Composition>, tag: usize) -> impl Iterator<Item = TaggedComposition> {
    set.into_iter().map(move |c| TaggedComposition::new(c, tag))
}

/// Index of the rightmost cell column holding water.
fn last_water_index(c: &Composition) -> Option<usize> {
    water_levels(c).iter().rposition(|&w| w > 0)
}

/// Length of the run of parts 2 starting at `start`.
fn twos_run(parts: &[u32], start: usize) -> usize {
    parts[start..].iter().take_while(|&&p| p == 2).count()
}

fn w_name(n: usize, k: usize) -> String {
    format!("W({n},{k})")
}

/// `W(n,0) <-> W(n-1,0) u W^i(n-1,0)`: decrease the last part by one.
///
/// Codomain tag 0 is `W(n-1,0)`, tag 1 is the increasable subset `W^i(n-1,0)`.
#[derive(Debug, Clone, Copy)]
pub struct DecreaseLastPart {
    n: usize,
}

impl DecreaseLastPart {
    pub fn new(n: usize) -> Result<Self, BijectionError> {
        if n < 2 {
            return Err(BijectionError::Parameters(format!("need n >= 2, got {n}")));
        }
        Ok(DecreaseLastPart { n })
    }
}

impl Bijection for DecreaseLastPart {
    type Domain = Composition;
    type Codomain = TaggedComposition;

    fn title(&self) -> String {
        let n = self.n;
        format!("W({n},0) <-> W({m},0) u W^i({m},0)", m = n - 1)
    }

    fn domain(&self) -> Vec<Composition> {
        water_set(self.n, 0)
    }

    fn codomain(&self) -> Vec<TaggedComposition> {
        let below = water_set(self.n - 1, 0);
        let increasable: Vec<_> = below
            .iter()
            .filter(|c| is_increasable(c))
            .cloned()
            .collect();
        tag_all(below, 0).chain(tag_all(increasable, 1)).collect()
    }

    fn forward(&self, c: &Composition) -> Result<TaggedComposition, BijectionError> {
        check_w(c, self.n, 0)?;
        let mut parts = c.parts().to_vec();
        match parts.pop() {
            Some(1) => Ok(tagged(parts, 0)),
            Some(2) => {
                parts.push(1);
                Ok(tagged(parts, 1))
            }
            _ => unreachable!("checked parts are 1 or 2 and n >= 2"),
        }
    }

    fn backward(&self, y: &TaggedComposition) -> Result<Composition, BijectionError> {
        check_tag(y.copy_tag, 2)?;
        let c = &y.composition;
        check_w(c, self.n - 1, 0)?;
        let mut parts = c.parts().to_vec();
        if y.copy_tag == 0 {
            parts.push(1);
        } else {
            if !is_increasable(c) {
                return Err(outside(c, "not increasable"));
            }
            *parts.last_mut().expect("increasable is nonempty") += 1;
        }
        Ok(Composition::new(parts).expect("positive parts"))
    }

    fn domain_label(&self, _: &Composition) -> String {
        w_name(self.n, 0)
    }

    fn codomain_label(&self, y: &TaggedComposition) -> String {
        match y.copy_tag {
            0 => w_name(self.n - 1, 0),
            _ => format!("W^i({},0)", self.n - 1),
        }
    }
}

/// `2W(n-3,0) <-> W(n-4,0) u W^j(n-1,0)`.
///
/// Domain tags 0 and 1 are the two copies of `W(n-3,0)`. Codomain tag 0 is
/// `W(n-4,0)`, tag 1 the non-increasable subset `W^j(n-1,0)`. In the first
/// copy a trailing 1 is removed or a 2 is appended; in the second copy
/// `(1^(n-3))` goes to `(1^(n-3),2)` and everything else gains `(1,1)`.
#[derive(Debug, Clone, Copy)]
pub struct AppendOrTrim {
    n: usize,
}

impl AppendOrTrim {
    pub fn new(n: usize) -> Result<Self, BijectionError> {
        if n < 4 {
            return Err(BijectionError::Parameters(format!("need n >= 4, got {n}")));
        }
        Ok(AppendOrTrim { n })
    }
}

impl Bijection for AppendOrTrim {
    type Domain = TaggedComposition;
    type Codomain = TaggedComposition;

    fn title(&self) -> String {
        let n = self.n;
        format!("2W({},0) <-> W({},0) u W^j({},0)", n - 3, n - 4, n - 1)
    }

    fn domain(&self) -> Vec<TaggedComposition> {
        let set = water_set(self.n - 3, 0);
        tag_all(set.clone(), 0).chain(tag_all(set, 1)).collect()
    }

    fn codomain(&self) -> Vec<TaggedComposition> {
        let rest: Vec<_> = water_set(self.n - 1, 0)
            .into_iter()
            .filter(|c| !is_increasable(c))
            .collect();
        tag_all(water_set(self.n - 4, 0), 0)
            .chain(tag_all(rest, 1))
            .collect()
    }

    fn forward(&self, x: &TaggedComposition) -> Result<TaggedComposition, BijectionError> {
        check_tag(x.copy_tag, 2)?;
        let c = &x.composition;
        check_w(c, self.n - 3, 0)?;
        let mut parts = c.parts().to_vec();
        if x.copy_tag == 0 {
            if parts.last() == Some(&1) {
                parts.pop();
                Ok(tagged(parts, 0))
            } else {
                parts.push(2);
                Ok(tagged(parts, 1))
            }
        } else {
            if c.is_all_ones() {
                parts.push(2);
            } else {
                parts.extend([1, 1]);
            }
            Ok(tagged(parts, 1))
        }
    }

    fn backward(&self, y: &TaggedComposition) -> Result<TaggedComposition, BijectionError> {
        check_tag(y.copy_tag, 2)?;
        let c = &y.composition;
        let mut parts = c.parts().to_vec();
        if y.copy_tag == 0 {
            check_w(c, self.n - 4, 0)?;
            parts.push(1);
            return Ok(tagged(parts, 0));
        }
        check_w(c, self.n - 1, 0)?;
        if is_increasable(c) {
            return Err(outside(c, "increasable compositions are not in W^j"));
        }
        if c.ends_with(&[1, 1]) {
            parts.truncate(parts.len() - 2);
            return Ok(tagged(parts, 1));
        }
        // Not increasable and not ending in (1,1): the last part is 2.
        parts.pop();
        let copy = if parts.iter().all(|&p| p == 1) { 1 } else { 0 };
        Ok(tagged(parts, copy))
    }

    fn domain_label(&self, x: &TaggedComposition) -> String {
        format!("{} copy {}", w_name(self.n - 3, 0), x.copy_tag + 1)
    }

    fn codomain_label(&self, y: &TaggedComposition) -> String {
        match y.copy_tag {
            0 => w_name(self.n - 4, 0),
            _ => format!("W^j({},0)", self.n - 1),
        }
    }
}

/// `W(n,0) u 2W(n-3,0) <-> 2W(n-1,0) u W(n-4,0)`, assembled from
/// [`DecreaseLastPart`] and [`AppendOrTrim`].
///
/// Domain tags: 0 = `W(n,0)`, 1 and 2 = the copies of `W(n-3,0)`.
/// Codomain tags: 0 and 1 = the copies of `W(n-1,0)`, 2 = `W(n-4,0)`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroWaterLinear {
    first: DecreaseLastPart,
    second: AppendOrTrim,
    n: usize,
}

impl ZeroWaterLinear {
    pub fn new(n: usize) -> Result<Self, BijectionError> {
        Ok(ZeroWaterLinear {
            first: DecreaseLastPart::new(n)?,
            second: AppendOrTrim::new(n)?,
            n,
        })
    }

    pub fn first(&self) -> &DecreaseLastPart {
        &self.first
    }

    pub fn second(&self) -> &AppendOrTrim {
        &self.second
    }
}

impl Bijection for ZeroWaterLinear {
    type Domain = TaggedComposition;
    type Codomain = TaggedComposition;

    fn title(&self) -> String {
        let n = self.n;
        format!(
            "W({n},0) u 2W({},0) <-> 2W({},0) u W({},0)",
            n - 3,
            n - 1,
            n - 4
        )
    }

    fn domain(&self) -> Vec<TaggedComposition> {
        tag_all(self.first.domain(), 0)
            .chain(
                self.second
                    .domain()
                    .into_iter()
                    .map(|x| TaggedComposition::new(x.composition, x.copy_tag + 1)),
            )
            .collect()
    }

    fn codomain(&self) -> Vec<TaggedComposition> {
        let below = water_set(self.n - 1, 0);
        tag_all(below.clone(), 0)
            .chain(tag_all(below, 1))
            .chain(tag_all(water_set(self.n - 4, 0), 2))
            .collect()
    }

    fn forward(&self, x: &TaggedComposition) -> Result<TaggedComposition, BijectionError> {
        check_tag(x.copy_tag, 3)?;
        if x.copy_tag == 0 {
            return self.first.forward(&x.composition);
        }
        let inner = TaggedComposition::new(x.composition.clone(), x.copy_tag - 1);
        let y = self.second.forward(&inner)?;
        let tag = if y.copy_tag == 0 { 2 } else { 1 };
        Ok(TaggedComposition::new(y.composition, tag))
    }

    fn backward(&self, y: &TaggedComposition) -> Result<TaggedComposition, BijectionError> {
        check_tag(y.copy_tag, 3)?;
        let from_second = |tag: usize| -> Result<TaggedComposition, BijectionError> {
            let x = self
                .second
                .backward(&TaggedComposition::new(y.composition.clone(), tag))?;
            Ok(TaggedComposition::new(x.composition, x.copy_tag + 1))
        };
        match y.copy_tag {
            0 => Ok(TaggedComposition::new(self.first.backward(y)?, 0)),
            1 if is_increasable(&y.composition) => {
                Ok(TaggedComposition::new(self.first.backward(y)?, 0))
            }
            1 => from_second(1),
            _ => from_second(0),
        }
    }

    fn domain_label(&self, x: &TaggedComposition) -> String {
        match x.copy_tag {
            0 => w_name(self.n, 0),
            t => format!("{} copy {t}", w_name(self.n - 3, 0)),
        }
    }

    fn codomain_label(&self, y: &TaggedComposition) -> String {
        match y.copy_tag {
            2 => w_name(self.n - 4, 0),
            t => format!("{} copy {}", w_name(self.n - 1, 0), t + 1),
        }
    }
}

/// `thm1d_map`: the combined zero-water bijection for a given `n >= 4`.
pub fn thm1d_map(
    n: usize,
    x: &TaggedComposition,
    direction: Direction,
) -> Result<TaggedComposition, BijectionError> {
    let map = ZeroWaterLinear::new(n)?;
    match direction {
        Direction::Forward => map.forward(x),
        Direction::Backward => map.backward(x),
    }
}

/// `W(n,1) <-> W(n-2,1) u (W(n-3,0) \ (1^(n-3)))`.
///
/// When the water cell is followed by a single 2, that 1 and 2 are removed
/// (codomain tag 1); when it is followed by a longer run of 2s, the first 2 of
/// the run is removed (tag 0).
#[derive(Debug, Clone, Copy)]
pub struct OneWaterCell {
    n: usize,
}

impl OneWaterCell {
    pub fn new(n: usize) -> Result<Self, BijectionError> {
        if n < 5 {
            return Err(BijectionError::Parameters(format!("need n >= 5, got {n}")));
        }
        Ok(OneWaterCell { n })
    }
}

impl Bijection for OneWaterCell {
    type Domain = Composition;
    type Codomain = TaggedComposition;

    fn title(&self) -> String {
        let n = self.n;
        format!(
            "W({n},1) <-> W({},1) u {{W({m},0) \\ (1^{m})}}",
            n - 2,
            m = n - 3
        )
    }

    fn domain(&self) -> Vec<Composition> {
        water_set(self.n, 1)
    }

    fn codomain(&self) -> Vec<TaggedComposition> {
        let zero: Vec<_> = water_set(self.n - 3, 0)
            .into_iter()
            .filter(|c| !c.is_all_ones())
            .collect();
        tag_all(water_set(self.n - 2, 1), 0)
            .chain(tag_all(zero, 1))
            .collect()
    }

    fn forward(&self, c: &Composition) -> Result<TaggedComposition, BijectionError> {
        check_w(c, self.n, 1)?;
        let cell = last_water_index(c).expect("one water cell");
        let mut parts = c.parts().to_vec();
        if twos_run(&parts, cell + 1) == 1 {
            parts.drain(cell..cell + 2);
            Ok(tagged(parts, 1))
        } else {
            parts.remove(cell + 1);
            Ok(tagged(parts, 0))
        }
    }

    fn backward(&self, y: &TaggedComposition) -> Result<Composition, BijectionError> {
        check_tag(y.copy_tag, 2)?;
        let c = &y.composition;
        let mut parts = c.parts().to_vec();
        if y.copy_tag == 0 {
            check_w(c, self.n - 2, 1)?;
            let cell = last_water_index(c).expect("one water cell");
            parts.insert(cell + 1, 2);
        } else {
            check_w(c, self.n - 3, 0)?;
            let last_two = parts
                .iter()
                .rposition(|&p| p == 2)
                .ok_or_else(|| BijectionError::Excluded(c.to_string()))?;
            parts.splice(last_two + 1..last_two + 1, [1, 2]);
        }
        Ok(Composition::new(parts).expect("positive parts"))
    }

    fn domain_label(&self, _: &Composition) -> String {
        w_name(self.n, 1)
    }

    fn codomain_label(&self, y: &TaggedComposition) -> String {
        match y.copy_tag {
            0 => w_name(self.n - 2, 1),
            _ => format!("W({m},0) \\ (1^{m})", m = self.n - 3),
        }
    }
}

pub fn wc1_map(
    n: usize,
    x: &TaggedComposition,
    direction: Direction,
) -> Result<TaggedComposition, BijectionError> {
    let map = OneWaterCell::new(n)?;
    match direction {
        Direction::Forward => {
            check_tag(x.copy_tag, 1)?;
            map.forward(&x.composition)
        }
        Direction::Backward => Ok(TaggedComposition::new(map.backward(x)?, 0)),
    }
}

/// `W(n,k) <-> W(n-1,k-1) u W(n-2,k)` for `k >= 2`.
///
/// Let `i` be the rightmost water cell. If a single 2 follows it, the 1 under
/// it is removed (codomain tag 0). If a run of two or more 2s follows, the first
/// of them is removed (tag 1).
///
/// The inverse of the first case puts the new 1 where it becomes the rightmost
/// water cell with a single 2 after it: right after the last water cell when a
/// single 2 follows that cell, otherwise just before the last 2 of the run
/// that follows it.
#[derive(Debug, Clone, Copy)]
pub struct ManyWaterCells {
    n: usize,
    k: usize,
}

impl ManyWaterCells {
    pub fn new(n: usize, k: usize) -> Result<Self, BijectionError> {
        if k < 2 || n < 6 {
            return Err(BijectionError::Parameters(format!(
                "need k >= 2 and n >= 6, got n = {n}, k = {k}"
            )));
        }
        Ok(ManyWaterCells { n, k })
    }
}

impl Bijection for ManyWaterCells {
    type Domain = Composition;
    type Codomain = TaggedComposition;

    fn title(&self) -> String {
        let (n, k) = (self.n, self.k);
        format!("W({n},{k}) <-> W({},{}) u W({},{k})", n - 1, k - 1, n - 2)
    }

    fn domain(&self) -> Vec<Composition> {
        water_set(self.n, self.k)
    }

    fn codomain(&self) -> Vec<TaggedComposition> {
        tag_all(water_set(self.n - 1, self.k - 1), 0)
            .chain(tag_all(water_set(self.n - 2, self.k), 1))
            .collect()
    }

    fn forward(&self, c: &Composition) -> Result<TaggedComposition, BijectionError> {
        check_w(c, self.n, self.k)?;
        let cell = last_water_index(c).expect("k >= 2 water cells");
        let mut parts = c.parts().to_vec();
        if twos_run(&parts, cell + 1) == 1 {
            parts.remove(cell);
            Ok(tagged(parts, 0))
        } else {
            parts.remove(cell + 1);
            Ok(tagged(parts, 1))
        }
    }

    fn backward(&self, y: &TaggedComposition) -> Result<Composition, BijectionError> {
        check_tag(y.copy_tag, 2)?;
        let c = &y.composition;
        let mut parts = c.parts().to_vec();
        if y.copy_tag == 0 {
            check_w(c, self.n - 1, self.k - 1)?;
            let cell = last_water_index(c).expect("k - 1 >= 1 water cells");
            let run = twos_run(&parts, cell + 1);
            let at = if run == 1 { cell + 1 } else { cell + run };
            parts.insert(at, 1);
        } else {
            check_w(c, self.n - 2, self.k)?;
            let cell = last_water_index(c).expect("k >= 2 water cells");
            parts.insert(cell + 1, 2);
        }
        Ok(Composition::new(parts).expect("positive parts"))
    }

    fn domain_label(&self, _: &Composition) -> String {
        w_name(self.n, self.k)
    }

    fn codomain_label(&self, y: &TaggedComposition) -> String {
        match y.copy_tag {
            0 => w_name(self.n - 1, self.k - 1),
            _ => w_name(self.n - 2, self.k),
        }
    }
}

pub fn wck_map(
    n: usize,
    k: usize,
    x: &TaggedComposition,
    direction: Direction,
) -> Result<TaggedComposition, BijectionError> {
    let map = ManyWaterCells::new(n, k)?;
    match direction {
        Direction::Forward => {
            check_tag(x.copy_tag, 1)?;
            map.forward(&x.composition)
        }
        Direction::Backward => Ok(TaggedComposition::new(map.backward(x)?, 0)),
    }
}

/// Colored partitions to compositions with exactly `k` water cells.
///
/// For `k >= 1`, a partition of `n - k - 4` is inserted into the skeleton
/// `(2, 1^k, 2)`: `1_1` parts lead, `1_2` parts trail, `2_1` parts follow the
/// first 2, `2_(k+1)` parts follow the last 2, and `2_i` parts sit between
/// the `(i-1)`st and `i`th skeleton 1.
///
/// For `k = 0` the partition has weight `n` and one color of 2: with at least
/// one 2 it becomes `(1^a, 2^b, 1^c)`; with no 2 (and no `1_2`) it stands for
/// `(1^n)`.
#[derive(Debug, Clone, Copy)]
pub struct ColoredPartitionMap {
    n: usize,
    k: usize,
}

impl ColoredPartitionMap {
    pub fn new(n: usize, k: usize) -> Self {
        ColoredPartitionMap { n, k }
    }

    /// Weight of the partitions in the domain, if any exist.
    fn target_weight(&self) -> Option<usize> {
        if self.k == 0 {
            Some(self.n)
        } else {
            self.n.checked_sub(self.k + 4)
        }
    }

    fn check_partition(&self, p: &ColoredPartition) -> Result<(), BijectionError> {
        if p.k() != self.k {
            return Err(outside(
                p,
                format!("has {} colors of 2, expected {}", p.twos.len(), self.k + 1),
            ));
        }
        match self.target_weight() {
            Some(w) if p.weight() == w as u64 => {}
            _ => {
                return Err(outside(
                    p,
                    format!("weight {} does not fit n = {}", p.weight(), self.n),
                ))
            }
        }
        if self.k == 0 && p.twos[0] == 0 && p.ones[1] != 0 {
            return Err(outside(p, "without a 2, only one color of 1 is available"));
        }
        Ok(())
    }
}

fn push_n(parts: &mut Vec<u32>, value: u32, count: u32) {
    parts.extend(std::iter::repeat_n(value, count as usize));
}

/// All multiplicity vectors of length `slots` summing to `total`.
fn weak_compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    if slots == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl Bijection for ColoredPartitionMap {
    type Domain = ColoredPartition;
    type Codomain = Composition;

    fn title(&self) -> String {
        let weight = self
            .target_weight()
            .map_or_else(|| "-".to_string(), |w| w.to_string());
        let twos = match self.k {
            0 => "2".to_string(),
            k => format!("2_1..2_{}", k + 1),
        };
        format!(
            "partitions of {weight} into 1_1,1_2,{twos} <-> {}",
            w_name(self.n, self.k)
        )
    }

    fn domain(&self) -> Vec<ColoredPartition> {
        let Some(weight) = self.target_weight() else {
            return Vec::new();
        };
        let weight = weight as u32;
        let mut out = Vec::new();
        for two_total in 0..=weight / 2 {
            let one_total = weight - 2 * two_total;
            for twos in weak_compositions(two_total, self.k + 1) {
                for ones in weak_compositions(one_total, 2) {
                    let p = ColoredPartition {
                        ones: [ones[0], ones[1]],
                        twos: twos.clone(),
                    };
                    if self.check_partition(&p).is_ok() {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn codomain(&self) -> Vec<Composition> {
        water_set(self.n, self.k)
    }

    fn forward(&self, p: &ColoredPartition) -> Result<Composition, BijectionError> {
        self.check_partition(p)?;
        let mut parts = Vec::new();
        push_n(&mut parts, 1, p.ones[0]);
        if self.k == 0 {
            push_n(&mut parts, 2, p.twos[0]);
        } else {
            parts.push(2);
            push_n(&mut parts, 2, p.twos[0]);
            for i in 1..=self.k {
                parts.push(1);
                if i < self.k {
                    push_n(&mut parts, 2, p.twos[i]);
                }
            }
            parts.push(2);
            push_n(&mut parts, 2, p.twos[self.k]);
        }
        push_n(&mut parts, 1, p.ones[1]);
        Ok(Composition::new(parts).expect("positive parts"))
    }

    fn backward(&self, c: &Composition) -> Result<ColoredPartition, BijectionError> {
        check_w(c, self.n, self.k)?;
        let parts = c.parts();
        let lead = parts.iter().take_while(|&&p| p == 1).count() as u32;
        if lead as usize == parts.len() {
            return Ok(ColoredPartition {
                ones: [lead, 0],
                twos: vec![0; self.k + 1],
            });
        }
        let trail = parts.iter().rev().take_while(|&&p| p == 1).count() as u32;
        let core = &parts[lead as usize..parts.len() - trail as usize];
        if self.k == 0 {
            return Ok(ColoredPartition {
                ones: [lead, trail],
                twos: vec![core.len() as u32],
            });
        }
        // core = 2^(1+t_1), 1, 2^t_2, 1, ..., 1, 2^(1+t_(k+1)); each 1 in core is a water cell.
        let mut twos = vec![0u32];
        for &p in core {
            if p == 1 {
                twos.push(0);
            } else {
                *twos.last_mut().expect("nonempty") += 1;
            }
        }
        debug_assert_eq!(twos.len(), self.k + 1);
        twos[0] -= 1;
        twos[self.k] -= 1;
        Ok(ColoredPartition {
            ones: [lead, trail],
            twos,
        })
    }

    fn domain_label(&self, _: &ColoredPartition) -> String {
        "partition".into()
    }

    fn codomain_label(&self, _: &Composition) -> String {
        w_name(self.n, self.k)
    }
}

/// `D(n) = U_k W(n-k,k) <-> C_ie(n)`.
///
/// Forward doubles every water cell (inserting a 1 after each), landing in
/// `W(n,2k)` with even internal runs of 1s, then conjugates. Backward
/// conjugates and halves each internal run of 1s.
#[derive(Debug, Clone, Copy)]
pub struct DiagonalToInternalEven {
    n: usize,
}

impl DiagonalToInternalEven {
    pub fn new(n: usize) -> Self {
        DiagonalToInternalEven { n }
    }
}

impl Bijection for DiagonalToInternalEven {
    type Domain = Composition;
    type Codomain = Composition;

    fn title(&self) -> String {
        let n = self.n;
        let parts: Vec<_> = (0..=n / 2).map(|k| w_name(n - k, k)).collect();
        format!("{} <-> C_ie({n})", parts.join(" u "))
    }

    fn domain(&self) -> Vec<Composition> {
        (0..=self.n / 2)
            .flat_map(|k| water_set(self.n - k, k))
            .collect()
    }

    fn codomain(&self) -> Vec<Composition> {
        enumerate(FamilyKind::InternalEven, self.n as u32).collect()
    }

    fn forward(&self, c: &Composition) -> Result<Composition, BijectionError> {
        if !c.is_member_of(FamilyKind::Parts12) {
            return Err(outside(c, "parts must be 1 or 2"));
        }
        let k = water_cells(c);
        if c.size() + k != self.n as u64 {
            return Err(outside(
                c,
                format!("size plus water cells must equal {}", self.n),
            ));
        }
        if c.is_empty() {
            return Ok(Composition::empty());
        }
        let mut doubled = Vec::with_capacity(c.len() + k as usize);
        for (&p, &w) in c.parts().iter().zip(water_levels(c).iter()) {
            doubled.push(p);
            if w > 0 {
                doubled.push(1);
            }
        }
        let doubled = Composition::new(doubled).expect("positive parts");
        Ok(conjugate(&doubled).expect("nonempty"))
    }

    fn backward(&self, c: &Composition) -> Result<Composition, BijectionError> {
        if c.size() != self.n as u64 || !c.is_member_of(FamilyKind::InternalEven) {
            return Err(outside(c, format!("not in C_ie({})", self.n)));
        }
        if c.is_empty() {
            return Ok(Composition::empty());
        }
        let conj = conjugate(c).expect("nonempty");
        let parts = conj.parts();
        if parts.iter().any(|&p| p > 2) {
            return Err(outside(c, "conjugate has a part larger than 2"));
        }
        let mut out = Vec::with_capacity(parts.len());
        let mut i = 0;
        while i < parts.len() {
            if parts[i] == 2 {
                out.push(2);
                i += 1;
                continue;
            }
            let run = parts[i..].iter().take_while(|&&p| p == 1).count();
            let internal = i > 0 && i + run < parts.len();
            if internal {
                if run % 2 == 1 {
                    return Err(BijectionError::OddInternalRun(c.to_string()));
                }
                push_n(&mut out, 1, (run / 2) as u32);
            } else {
                push_n(&mut out, 1, run as u32);
            }
            i += run;
        }
        Ok(Composition::new(out).expect("positive parts"))
    }

    fn domain_label(&self, c: &Composition) -> String {
        w_name(c.size() as usize, water_cells(c) as usize)
    }

    fn codomain_label(&self, _: &Composition) -> String {
        format!("C_ie({})", self.n)
    }
}

pub fn diagonal_cie_map(
    n: usize,
    x: &Composition,
    direction: Direction,
) -> Result<Composition, BijectionError> {
    let map = DiagonalToInternalEven::new(n);
    match direction {
        Direction::Forward => map.forward(x),
        Direction::Backward => map.backward(x),
    }
}

/// Copies of `C(m)` onto `C_ie(n)`.
///
/// For `n = 2m - 1`: `C(m) u (C(m) \ (m))`; double every part, then decrease
/// the first part (copy 0) or the last part (copy 1).
///
/// For `n = 2m`: `2C(m) u (C(m) \ (m))`; double every part, then nothing
/// (copy 0), decrease the first part and append a 1 (copy 1), or decrease the
/// first part and increase the last (copy 2).
#[derive(Debug, Clone, Copy)]
pub struct DoublingToInternalEven {
    n: usize,
    m: usize,
}

impl DoublingToInternalEven {
    pub fn new(n: usize) -> Result<Self, BijectionError> {
        if n == 0 {
            return Err(BijectionError::Parameters("need n >= 1".into()));
        }
        Ok(DoublingToInternalEven {
            n,
            m: n.div_ceil(2),
        })
    }

    fn odd(&self) -> bool {
        self.n % 2 == 1
    }

    fn copies(&self) -> usize {
        if self.odd() {
            2
        } else {
            3
        }
    }

    /// The copy that leaves out the one-part composition `(m)`.
    fn restricted_copy(&self) -> usize {
        self.copies() - 1
    }
}

impl Bijection for DoublingToInternalEven {
    type Domain = TaggedComposition;
    type Codomain = Composition;

    fn title(&self) -> String {
        let m = self.m;
        let full = if self.odd() { "C" } else { "2C" };
        format!("{full}({m}) u {{C({m}) \\ ({m})}} <-> C_ie({})", self.n)
    }

    fn domain(&self) -> Vec<TaggedComposition> {
        let all: Vec<_> = enumerate(FamilyKind::All, self.m as u32).collect();
        let mut out = Vec::new();
        for tag in 0..self.copies() {
            let keep = |c: &Composition| tag != self.restricted_copy() || c.len() > 1;
            out.extend(tag_all(
                all.iter().filter(|c| keep(c)).cloned().collect(),
                tag,
            ));
        }
        out
    }

    fn codomain(&self) -> Vec<Composition> {
        enumerate(FamilyKind::InternalEven, self.n as u32).collect()
    }

    fn forward(&self, x: &TaggedComposition) -> Result<Composition, BijectionError> {
        check_tag(x.copy_tag, self.copies())?;
        let c = &x.composition;
        if c.size() != self.m as u64 {
            return Err(outside(c, format!("expected a composition of {}", self.m)));
        }
        if x.copy_tag == self.restricted_copy() && c.len() == 1 {
            return Err(BijectionError::Excluded(x.to_string()));
        }
        let mut parts: Vec<u32> = c.parts().iter().map(|&p| 2 * p).collect();
        let last = parts.len() - 1;
        match (self.odd(), x.copy_tag) {
            (true, 0) => parts[0] -= 1,
            (true, _) => parts[last] -= 1,
            (false, 0) => {}
            (false, 1) => {
                parts[0] -= 1;
                parts.push(1);
            }
            (false, _) => {
                parts[0] -= 1;
                parts[last] += 1;
            }
        }
        Ok(Composition::new(parts).expect("doubled parts stay positive"))
    }

    fn backward(&self, c: &Composition) -> Result<TaggedComposition, BijectionError> {
        if c.size() != self.n as u64 || !c.is_member_of(FamilyKind::InternalEven) {
            return Err(outside(c, format!("not in C_ie({})", self.n)));
        }
        let mut parts = c.parts().to_vec();
        let last = parts.len() - 1;
        let first_odd = parts[0] % 2 == 1;
        let tag = if self.odd() {
            if first_odd {
                parts[0] += 1;
                0
            } else {
                parts[last] += 1;
                1
            }
        } else if !first_odd {
            0
        } else if parts[last] == 1 {
            parts[0] += 1;
            parts.pop();
            1
        } else {
            parts[0] += 1;
            parts[last] -= 1;
            2
        };
        let halved = parts.iter().map(|&p| p / 2).collect();
        Ok(tagged(halved, tag))
    }

    fn domain_label(&self, x: &TaggedComposition) -> String {
        format!("C({}) copy {}", self.m, x.copy_tag + 1)
    }

    fn codomain_label(&self, _: &Composition) -> String {
        format!("C_ie({})", self.n)
    }
}
