//! Direction words. `OrientWord` is the relative word attached to an internal
//! edge (one bit per extra colour), `MultiDir` the absolute word attached to a
//! leg (one bit per colour including the basic one).

use crate::{GraphError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Out,
    In,
}

impl Dir {
    pub fn opp(self) -> Dir {
        match self {
            Dir::Out => Dir::In,
            Dir::In => Dir::Out,
        }
    }
}

/// Relative orientation word of length `k`: bit `t` set means colour `t+1`
/// runs against the basic direction of the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientWord {
    len: u8,
    bits: u32,
}

impl OrientWord {
    pub fn aligned(len: u8) -> Self {
        OrientWord { len, bits: 0 }
    }

    pub fn from_bits(len: u8, bits: u32) -> Self {
        debug_assert!(len <= 32);
        OrientWord {
            len,
            bits: bits & mask(len),
        }
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// True if colour `t+1` is aligned with the basic direction.
    pub fn is_aligned(&self, t: u8) -> bool {
        debug_assert!(t < self.len);
        self.bits & (1 << t) == 0
    }

    pub fn flip_all(&self) -> Self {
        OrientWord {
            len: self.len,
            bits: !self.bits & mask(self.len),
        }
    }

    pub fn with_bit(&self, t: u8, anti: bool) -> Self {
        let mut bits = self.bits & !(1 << t);
        if anti {
            bits |= 1 << t;
        }
        OrientWord {
            len: self.len.max(t + 1),
            bits,
        }
    }

    /// Appends one more colour bit, producing a word of length `len + 1`.
    pub fn extended(&self, anti: bool) -> Self {
        let mut bits = self.bits;
        if anti {
            bits |= 1 << self.len;
        }
        OrientWord {
            len: self.len + 1,
            bits,
        }
    }

    /// All `2^len` words of the given length, in lexicographic order with the
    /// aligned letter first.
    pub fn all(len: u8) -> impl Iterator<Item = OrientWord> {
        // lexicographic order over words read colour 1 first = numeric order
        // of the reversed bit pattern; for a fixed length, plain numeric order
        // of `bits` is a valid deterministic total order and agrees with
        // lexicographic order when bit 0 is the most significant letter.
        // We want the documented lexicographic order (colour 1 first, aligned
        // < anti), so sort by the reversed pattern.
        let mut words: Vec<OrientWord> = (0u32..(1 << len))
            .map(|b| OrientWord::from_bits(len, b))
            .collect();
        words.sort();
        words.into_iter()
    }

    pub fn to_string_pm(&self) -> String {
        (0..self.len)
            .map(|t| if self.is_aligned(t) { '+' } else { '-' })
            .collect()
    }

    pub fn parse_pm(s: &str) -> Result<Self> {
        let mut bits = 0u32;
        let mut len = 0u8;
        for c in s.chars() {
            match c {
                '+' => {}
                '-' => bits |= 1 << len,
                _ => return Err(GraphError::Parse(format!("bad orient char {c:?}"))),
            }
            len += 1;
        }
        Ok(OrientWord { len, bits })
    }
}

impl Ord for OrientWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // lexicographic on letters, colour 1 first, aligned ('+') < anti ('-')
        self.len.cmp(&other.len).then_with(|| {
            for t in 0..self.len {
                let a = !self.is_aligned(t) as u8;
                let b = !other.is_aligned(t) as u8;
                if a != b {
                    return a.cmp(&b);
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for OrientWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Absolute multidirection of length `k+1`; index 0 is the basic colour.
/// Bit set means `in`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDir {
    len: u8,
    bits: u32,
}

impl MultiDir {
    pub fn new(len: u8) -> Self {
        debug_assert!(len >= 1);
        MultiDir { len, bits: 0 }
    }

    pub fn from_dirs(dirs: &[Dir]) -> Self {
        let mut bits = 0u32;
        for (i, d) in dirs.iter().enumerate() {
            if *d == Dir::In {
                bits |= 1 << i;
            }
        }
        MultiDir {
            len: dirs.len() as u8,
            bits,
        }
    }

    /// Builds the absolute multidirection of a leg from its basic direction
    /// and the relative word over the extra colours.
    pub fn from_basic_and_relative(basic: Dir, rel: OrientWord) -> Self {
        let mut dirs = vec![basic];
        for t in 0..rel.len() {
            let d = if rel.is_aligned(t) { basic } else { basic.opp() };
            dirs.push(d);
        }
        MultiDir::from_dirs(&dirs)
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, tau: u8) -> Dir {
        debug_assert!(tau < self.len);
        if self.bits & (1 << tau) == 0 {
            Dir::Out
        } else {
            Dir::In
        }
    }

    pub fn basic(&self) -> Dir {
        self.get(0)
    }

    /// The word of the extra colours relative to the basic direction.
    pub fn relative(&self) -> OrientWord {
        let basic = self.basic();
        let mut w = OrientWord::aligned(self.len - 1);
        for t in 1..self.len {
            if self.get(t) != basic {
                w = w.with_bit(t - 1, true);
            }
        }
        OrientWord::from_bits(self.len - 1, w.bits())
    }

    pub fn opp(&self) -> Self {
        MultiDir {
            len: self.len,
            bits: !self.bits & mask(self.len),
        }
    }

    pub fn to_string_oi(&self) -> String {
        (0..self.len)
            .map(|t| match self.get(t) {
                Dir::Out => 'o',
                Dir::In => 'i',
            })
            .collect()
    }

    pub fn parse_oi(s: &str) -> Result<Self> {
        let mut dirs = Vec::new();
        for c in s.chars() {
            match c {
                'o' => dirs.push(Dir::Out),
                'i' => dirs.push(Dir::In),
                _ => return Err(GraphError::Parse(format!("bad multidir char {c:?}"))),
            }
        }
        if dirs.is_empty() {
            return Err(GraphError::Parse("empty multidirection".into()));
        }
        Ok(MultiDir::from_dirs(&dirs))
    }
}

fn mask(len: u8) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opp_is_involution_and_flips_every_position() {
        let m = MultiDir::from_dirs(&[Dir::Out, Dir::In, Dir::Out]);
        let o = m.opp();
        for t in 0..3 {
            assert_eq!(o.get(t), m.get(t).opp());
        }
        assert_eq!(o.opp(), m);
    }

    #[test]
    fn relative_word_is_stable_under_opp() {
        // flipping every absolute direction keeps the relative word
        let m = MultiDir::from_dirs(&[Dir::Out, Dir::In, Dir::Out]);
        assert_eq!(m.relative(), m.opp().relative());
    }

    #[test]
    fn lex_order_aligned_first() {
        let all: Vec<_> = OrientWord::all(2).collect();
        let strings: Vec<_> = all.iter().map(|w| w.to_string_pm()).collect();
        assert_eq!(strings, vec!["++", "+-", "-+", "--"]);
    }

    #[test]
    fn pm_roundtrip() {
        let w = OrientWord::parse_pm("+-+").unwrap();
        assert_eq!(w.to_string_pm(), "+-+");
        assert_eq!(w.flip_all().to_string_pm(), "-+-");
    }
}
