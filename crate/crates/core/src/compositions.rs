//! Integer compositions, MacMahon's cut/join encoding and the water-cell
//! statistic on bargraphs.
//!
//! A [`Composition`] is an ordered sequence of positive parts. The three
//! families used throughout the crate are described by [`FamilyKind`] and are
//! streamed in lexicographic order by [`enumerate`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("part {index} is zero; every part must be at least 1")]
    ZeroPart { index: usize },
    #[error("the empty composition has no cut/join word and no conjugate")]
    Empty,
    #[error("cannot parse composition from {0:?}")]
    Parse(String),
    #[error("invalid cut/join symbol {0:?}; expected 'C' or 'J'")]
    BadSymbol(char),
}

/// An ordered sequence of positive integers. The empty sequence is the unique
/// composition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(CompositionError::ZeroPart { index });
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    /// The integer being composed.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    pub fn ends_with(&self, suffix: &[u32]) -> bool {
        self.0.ends_with(suffix)
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn is_member_of(&self, kind: FamilyKind) -> bool {
        let t = self.0.len();
        match kind {
            FamilyKind::All => true,
            FamilyKind::Parts12 => self.0.iter().all(|&p| p <= 2),
            FamilyKind::InternalEven => t < 3 || self.0[1..t - 1].iter().all(|p| p % 2 == 0),
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Parses `(2,1,2)`, `2,1,2` or `()`. Whitespace is ignored.
impl FromStr for Composition {
    type Err = CompositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(&cleaned);
        if inner.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CompositionError::Parse(s.to_string()))?;
        Composition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = CompositionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

/// A juncture between two adjacent cells of the `1 x n` tiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Juncture {
    Cut,
    Join,
}

impl Juncture {
    pub fn flipped(self) -> Self {
        match self {
            Juncture::Cut => Juncture::Join,
            Juncture::Join => Juncture::Cut,
        }
    }
}

/// The length `n - 1` word of cuts and joins describing a composition of `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CutJoinSequence(Vec<Juncture>);

impl CutJoinSequence {
    pub fn new(symbols: Vec<Juncture>) -> Self {
        CutJoinSequence(symbols)
    }

    pub fn symbols(&self) -> &[Juncture] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flipped(&self) -> Self {
        CutJoinSequence(self.0.iter().map(|j| j.flipped()).collect())
    }
}

impl fmt::Display for CutJoinSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.0 {
            f.write_str(match j {
                Juncture::Cut => "C",
                Juncture::Join => "J",
            })?;
        }
        Ok(())
    }
}

impl FromStr for CutJoinSequence {
    type Err = CompositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'C' | 'c' => Ok(Juncture::Cut),
                'J' | 'j' => Ok(Juncture::Join),
                other => Err(CompositionError::BadSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(CutJoinSequence)
    }
}

/// Encodes `c` as its tiling junctures. The empty composition and every
/// composition of 1 map to the empty word.
pub fn to_cut_join(c: &Composition) -> CutJoinSequence {
    let mut symbols = Vec::with_capacity(c.size().saturating_sub(1) as usize);
    for (i, &part) in c.parts().iter().enumerate() {
        if i > 0 {
            symbols.push(Juncture::Cut);
        }
        symbols.extend(std::iter::repeat_n(Juncture::Join, part as usize - 1));
    }
    CutJoinSequence(symbols)
}

/// Decodes a word of length `n - 1` into a composition of `n`: a maximal run of
/// `j` joins becomes a part `j + 1`.
pub fn from_cut_join(s: &CutJoinSequence) -> Composition {
    let mut parts = Vec::new();
    let mut current = 1u32;
    for j in s.symbols() {
        match j {
            Juncture::Join => current += 1,
            Juncture::Cut => {
                parts.push(current);
                current = 1;
            }
        }
    }
    parts.push(current);
    Composition(parts)
}

/// MacMahon's conjugate: swap every cut and join.
pub fn conjugate(c: &Composition) -> Result<Composition, CompositionError> {
    if c.is_empty() {
        return Err(CompositionError::Empty);
    }
    Ok(from_cut_join(&to_cut_join(c).flipped()))
}

/// Water held above each column of the bargraph of `c`.
///
/// Entry `i` is `max(0, min(L, R) - c_i)` where `L` and `R` are the tallest
/// columns strictly left and strictly right of `i`.
pub fn water_levels(c: &Composition) -> Vec<u32> {
    let parts = c.parts();
    let t = parts.len();
    let mut right_max = vec![0u32; t];
    for i in (0..t.saturating_sub(1)).rev() {
        right_max[i] = right_max[i + 1].max(parts[i + 1]);
    }
    let mut left_max = 0u32;
    let mut levels = Vec::with_capacity(t);
    for (i, &p) in parts.iter().enumerate() {
        levels.push(left_max.min(right_max[i]).saturating_sub(p));
        left_max = left_max.max(p);
    }
    levels
}

/// Number of water cells (the capacity) of the bargraph of `c`.
pub fn water_cells(c: &Composition) -> u64 {
    water_levels(c).iter().map(|&w| u64::from(w)).sum()
}

/// The composition families handled by [`enumerate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `C(n)`: every composition.
    All,
    /// `C_12(n)`: parts in `{1, 2}`.
    Parts12,
    /// `C_ie(n)`: every part other than the first and last is even.
    InternalEven,
}

impl FamilyKind {
    fn allows(self, part: u32, position: usize, remaining: u32) -> bool {
        match self {
            FamilyKind::All => true,
            FamilyKind::Parts12 => part <= 2,
            FamilyKind::InternalEven => {
                position == 0 || part == remaining || part.is_multiple_of(2)
            }
        }
    }

    fn max_part(self, remaining: u32) -> u32 {
        match self {
            FamilyKind::Parts12 => remaining.min(2),
            _ => remaining,
        }
    }
}

/// Streams the members of a family of compositions of `n` in lexicographic
/// order of their parts.
pub fn enumerate(kind: FamilyKind, n: u32) -> Compositions {
    Compositions {
        kind,
        n,
        parts: Vec::new(),
        started: false,
        done: false,
    }
}

/// Lazy lexicographic enumeration; see [`enumerate`].
#[derive(Debug, Clone)]
pub struct Compositions {
    kind: FamilyKind,
    n: u32,
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl Compositions {
    fn smallest_allowed(&self, from: u32, position: usize, remaining: u32) -> Option<u32> {
        // Every family here can always be completed after any allowed part, so
        // the smallest allowed part is the lexicographically next choice.
        (from..=self.kind.max_part(remaining)).find(|&p| self.kind.allows(p, position, remaining))
    }

    fn fill(&mut self, mut remaining: u32) {
        while remaining > 0 {
            let position = self.parts.len();
            let p = self
                .smallest_allowed(1, position, remaining)
                .expect("families are always completable");
            self.parts.push(p);
            remaining -= p;
        }
    }

    fn advance(&mut self) -> bool {
        let mut remaining = 0u32;
        while let Some(p) = self.parts.pop() {
            remaining += p;
            let position = self.parts.len();
            if let Some(next) = self.smallest_allowed(p + 1, position, remaining) {
                self.parts.push(next);
                self.fill(remaining - next);
                return true;
            }
        }
        false
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill(self.n);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(Composition(self.parts.clone()))
    }
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Number of members of a family, by enumeration.
pub fn count(kind: FamilyKind, n: u32) -> BigUint {
    let mut total = BigUint::zero();
    for _ in enumerate(kind, n) {
        total += 1u32;
    }
    total
}

/// Weakly unimodal compositions in `C_12(n)` are exactly `(1^a, 2^b, 1^c)`.
pub fn is_ones_twos_ones(c: &Composition) -> bool {
    let parts = c.parts();
    let lead = parts.iter().take_while(|&&p| p == 1).count();
    let twos = parts[lead..].iter().take_while(|&&p| p == 2).count();
    parts[lead + twos..].iter().all(|&p| p == 1)
}

/// A member of `W(n,0)` is increasable when it is `(1^n)` or ends in `(2,1)`:
/// its last part can grow by one without creating a water cell.
pub fn is_increasable(c: &Composition) -> bool {
    !c.is_empty() && (c.is_all_ones() || c.ends_with(&[2, 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_zero_parts() {
        assert_eq!(
            Composition::new(vec![1, 0, 2]),
            Err(CompositionError::ZeroPart { index: 1 })
        );
    }

    #[test]
    fn all_compositions_of_four() {
        let got: Vec<_> = enumerate(FamilyKind::All, 4).collect();
        assert_eq!(got.len(), 8);
        for expected in [[1, 1, 1, 1].as_slice(), &[2, 2], &[4]] {
            assert!(got.contains(&comp(expected)));
        }
        assert_eq!(got.first(), Some(&comp(&[1, 1, 1, 1])));
        assert_eq!(got.last(), Some(&comp(&[4])));
    }

    #[test]
    fn parts12_of_four() {
        assert_eq!(enumerate(FamilyKind::Parts12, 4).count(), 5);
    }

    #[test]
    fn internal_even_of_four_and_five() {
        let got: Vec<_> = enumerate(FamilyKind::InternalEven, 4).collect();
        let want: Vec<_> = [vec![1, 2, 1], vec![1, 3], vec![2, 2], vec![3, 1], vec![4]]
            .into_iter()
            .map(|p| comp(&p))
            .collect();
        assert_eq!(got, want);
        assert_eq!(enumerate(FamilyKind::InternalEven, 5).count(), 7);
    }

    #[test]
    fn zero_yields_only_the_empty_composition() {
        for kind in [
            FamilyKind::All,
            FamilyKind::Parts12,
            FamilyKind::InternalEven,
        ] {
            let got: Vec<_> = enumerate(kind, 0).collect();
            assert_eq!(got, vec![Composition::empty()]);
        }
    }

    #[test]
    fn enumeration_is_strictly_increasing_and_in_family() {
        for kind in [
            FamilyKind::All,
            FamilyKind::Parts12,
            FamilyKind::InternalEven,
        ] {
            for n in 0..=12 {
                let got: Vec<_> = enumerate(kind, n).collect();
                assert!(got.windows(2).all(|w| w[0] < w[1]), "{kind:?} {n}");
                assert!(got
                    .iter()
                    .all(|c| c.size() == u64::from(n) && c.is_member_of(kind)));
            }
        }
    }

    #[test]
    fn enumeration_matches_filtered_all() {
        for n in 0..=12 {
            for kind in [FamilyKind::Parts12, FamilyKind::InternalEven] {
                let filtered: Vec<_> = enumerate(FamilyKind::All, n)
                    .filter(|c| c.is_member_of(kind))
                    .collect();
                assert_eq!(enumerate(kind, n).collect::<Vec<_>>(), filtered);
            }
        }
    }

    #[test]
    fn cardinalities() {
        for n in 1..=16u32 {
            assert_eq!(count(FamilyKind::All, n), BigUint::from(1u64 << (n - 1)));
        }
        for n in 0..=25u32 {
            assert_eq!(count(FamilyKind::Parts12, n), fibonacci(u64::from(n) + 1));
        }
    }

    #[test]
    fn water_cell_examples() {
        assert_eq!(water_cells(&comp(&[1, 2, 1, 4, 2, 4, 1, 2, 1, 3])), 8);
        assert_eq!(water_cells(&comp(&[2, 1, 2])), 1);
        assert_eq!(water_cells(&comp(&[2, 1, 1, 2])), 2);
        assert_eq!(water_cells(&comp(&[2, 1, 2, 1, 2])), 2);
        assert_eq!(water_cells(&comp(&[1, 1, 1, 1])), 0);
        assert_eq!(water_cells(&comp(&[7])), 0);
        assert_eq!(water_cells(&comp(&[3, 1, 1, 1, 3])), 6);
        assert_eq!(water_cells(&Composition::empty()), 0);
    }

    #[test]
    fn water_levels_locate_cells() {
        assert_eq!(
            water_levels(&comp(&[2, 1, 2, 2, 1, 1, 2])),
            vec![0, 1, 0, 0, 1, 1, 0]
        );
    }

    #[test]
    fn cut_join_examples() {
        assert_eq!(to_cut_join(&comp(&[3, 1])).to_string(), "JJC");
        assert_eq!(to_cut_join(&comp(&[1, 1, 2])).to_string(), "CCJ");
        assert_eq!(to_cut_join(&Composition::ones(5)).to_string(), "CCCC");
        assert_eq!(to_cut_join(&comp(&[5])).to_string(), "JJJJ");
        assert!(to_cut_join(&comp(&[1])).is_empty());
        let word: CutJoinSequence = "JJC".parse().unwrap();
        assert_eq!(from_cut_join(&word), comp(&[3, 1]));
        assert_eq!(
            "JXC".parse::<CutJoinSequence>(),
            Err(CompositionError::BadSymbol('X'))
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&comp(&[3, 1])).unwrap(), comp(&[1, 1, 2]));
        assert_eq!(conjugate(&comp(&[1, 1, 1, 1])).unwrap(), comp(&[4]));
        assert_eq!(
            conjugate(&Composition::empty()),
            Err(CompositionError::Empty)
        );
    }

    #[test]
    fn conjugation_is_an_involution_on_c10() {
        let all: Vec<_> = enumerate(FamilyKind::All, 10).collect();
        assert_eq!(all.len(), 512);
        let mut images = Vec::with_capacity(all.len());
        for c in &all {
            let d = conjugate(c).unwrap();
            assert_eq!(d.size(), 10);
            assert_eq!(&conjugate(&d).unwrap(), c);
            images.push(d);
        }
        images.sort();
        assert_eq!(images, all);
    }

    #[test]
    fn zero_water_means_ones_twos_ones() {
        for n in 0..=20 {
            for c in enumerate(FamilyKind::Parts12, n) {
                assert_eq!(water_cells(&c) == 0, is_ones_twos_ones(&c), "{c}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("(2,1, 2)".parse::<Composition>().unwrap(), comp(&[2, 1, 2]));
        assert_eq!("()".parse::<Composition>().unwrap(), Composition::empty());
        assert_eq!(comp(&[1, 2]).to_string(), "(1,2)");
        assert!("(1,x)".parse::<Composition>().is_err());
        assert!("(1,0)".parse::<Composition>().is_err());
    }

    #[test]
    fn fibonacci_values() {
        let got: Vec<u64> = (0..10).map(|n| fibonacci(n).try_into().unwrap()).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }
}
