//! Element algebra in the dihedral group `D_2n = <a, b | a^n = b^2 = (ab)^2 = e>`.
//!
//! Every element is `a^k` (a rotation) or `a^k b` (a reflection) with `k` reduced
//! into `[0, n)`. The modulus travels with each element so that mixing groups is
//! caught instead of silently producing garbage.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest rotation modulus accepted by the algebra layer.
pub const MAX_MODULUS: u32 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Rotation,
    Reflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    kind: Kind,
    exponent: u32,
    modulus: u32,
}

pub(crate) fn check_modulus(n: u32) -> Result<()> {
    if (2..=MAX_MODULUS).contains(&n) {
        Ok(())
    } else {
        Err(Error::ModulusOutOfRange(n))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduces a signed exponent into `[0, n)`.
pub fn reduce(k: i64, n: u32) -> u32 {
    k.rem_euclid(i64::from(n)) as u32
}

impl DihedralElement {
    pub fn new(kind: Kind, exponent: i64, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self {
            kind,
            exponent: reduce(exponent, modulus),
            modulus,
        })
    }

    /// `a^k`.
    pub fn rotation(k: i64, n: u32) -> Result<Self> {
        Self::new(Kind::Rotation, k, n)
    }

    /// `a^k b`.
    pub fn reflection(k: i64, n: u32) -> Result<Self> {
        Self::new(Kind::Reflection, k, n)
    }

    pub fn identity(n: u32) -> Result<Self> {
        Self::rotation(0, n)
    }

    /// Element with canonical index `idx`: rotations occupy `0..n`, reflections `n..2n`.
    pub fn from_index(idx: usize, n: u32) -> Result<Self> {
        let order = 2 * n as usize;
        if idx >= order {
            return Err(Error::VertexOutOfRange { vertex: idx, order });
        }
        if idx < n as usize {
            Self::rotation(idx as i64, n)
        } else {
            Self::reflection((idx - n as usize) as i64, n)
        }
    }

    /// All `2n` elements in canonical order.
    pub fn all(n: u32) -> Result<Vec<Self>> {
        check_modulus(n)?;
        Ok((0..2 * n as usize)
            .map(|i| Self::from_index(i, n).expect("index in range"))
            .collect())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Rotation && self.exponent == 0
    }

    pub fn is_reflection(&self) -> bool {
        self.kind == Kind::Reflection
    }

    /// Position in the canonical element order.
    pub fn index(&self) -> usize {
        match self.kind {
            Kind::Rotation => self.exponent as usize,
            Kind::Reflection => (self.modulus + self.exponent) as usize,
        }
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }

    /// Group product `self * other`.
    ///
    /// Uses `b a^j = a^{-j} b`, so `a^i b * a^j = a^{i-j} b` and
    /// `a^i b * a^j b = a^{i-j}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let n = i64::from(self.modulus);
        let (i, j) = (i64::from(self.exponent), i64::from(other.exponent));
        let (kind, k) = match (self.kind, other.kind) {
            (Kind::Rotation, Kind::Rotation) => (Kind::Rotation, i + j),
            (Kind::Rotation, Kind::Reflection) => (Kind::Reflection, i + j),
            (Kind::Reflection, Kind::Rotation) => (Kind::Reflection, i - j + n),
            (Kind::Reflection, Kind::Reflection) => (Kind::Rotation, i - j + n),
        };
        Ok(Self {
            kind,
            exponent: reduce(k, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn inverse(&self) -> Self {
        match self.kind {
            Kind::Rotation => Self {
                exponent: reduce(-i64::from(self.exponent), self.modulus),
                ..*self
            },
            Kind::Reflection => *self,
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u64) -> Self {
        match self.kind {
            Kind::Rotation => {
                let n = u64::from(self.modulus);
                let e = (u64::from(self.exponent) * (k % n)) % n;
                Self {
                    exponent: e as u32,
                    ..*self
                }
            }
            Kind::Reflection if k % 2 == 1 => *self,
            Kind::Reflection => Self {
                kind: Kind::Rotation,
                exponent: 0,
                modulus: self.modulus,
            },
        }
    }

    /// Smallest positive `k` with `self^k = e`.
    pub fn order(&self) -> u64 {
        match self.kind {
            Kind::Reflection => 2,
            Kind::Rotation => {
                let n = u64::from(self.modulus);
                n / gcd(u64::from(self.exponent), n)
            }
        }
    }

    /// Grammar token: `r<k>` for `a^k`, `s<k>` for `a^k b`.
    pub fn token(&self) -> String {
        self.to_string()
    }

    /// Parses a single `r<k>` / `s<k>` token, reducing `k` mod `n`.
    pub fn parse_token(token: &str, n: u32) -> Result<Self> {
        let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::BadToken(token.trim().to_string());
        let mut chars = t.chars();
        let kind = match chars.next() {
            Some('r') => Kind::Rotation,
            Some('s') => Kind::Reflection,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let k: u64 = digits.parse().map_err(|_| bad())?;
        let k = (k % u64::from(n)) as i64;
        Self::new(kind, k, n)
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Rotation => write!(f, "r{}", self.exponent),
            Kind::Reflection => write!(f, "s{}", self.exponent),
        }
    }
}

impl PartialOrd for DihedralElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DihedralElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.modulus, self.index()).cmp(&(other.modulus, other.index()))
    }
}

/// Subgroup generated by `seed` inside `D_2n`, grown by right-multiplying
/// generators until nothing new appears.
pub fn closure(seed: &[DihedralElement], n: u32) -> Result<BTreeSet<DihedralElement>> {
    let e = DihedralElement::identity(n)?;
    for s in seed {
        e.same_group(s)?;
    }
    let mut gens: Vec<DihedralElement> = seed.to_vec();
    gens.extend(seed.iter().map(DihedralElement::inverse));
    gens.sort();
    gens.dedup();

    let mut group = BTreeSet::from([e]);
    let mut frontier = vec![e];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.multiply(g)?;
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    Ok(group)
}

/// A validated connection set: identity-free, inverse-closed, duplicate-free,
/// kept in canonical element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    modulus: u32,
    members: Vec<DihedralElement>,
}

impl ConnectionSet {
    pub fn new(n: u32, elements: impl IntoIterator<Item = DihedralElement>) -> Result<Self> {
        check_modulus(n)?;
        let mut members: Vec<DihedralElement> = elements.into_iter().collect();
        for m in &members {
            if m.modulus != n {
                return Err(Error::ModulusMismatch {
                    left: n,
                    right: m.modulus,
                });
            }
            if m.is_identity() {
                return Err(Error::IdentityInSet);
            }
        }
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].token()));
        }
        for m in &members {
            let inv = m.inverse();
            if members.binary_search(&inv).is_err() {
                return Err(Error::NotInverseClosed {
                    element: m.token(),
                    inverse: inv.token(),
                });
            }
        }
        Ok(Self { modulus: n, members })
    }

    /// Parses the comma-separated token grammar, e.g. `"r1,r4,s0"` for `{a, a^4, b}`.
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        check_modulus(n)?;
        let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if stripped.is_empty() {
            return Self::new(n, []);
        }
        let elements = stripped
            .split(',')
            .map(|tok| DihedralElement::parse_token(tok, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, elements)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn members(&self) -> &[DihedralElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &DihedralElement) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn rotations(&self) -> impl Iterator<Item = &DihedralElement> {
        self.members.iter().filter(|m| !m.is_reflection())
    }

    pub fn reflections(&self) -> impl Iterator<Item = &DihedralElement> {
        self.members.iter().filter(|m| m.is_reflection())
    }

    /// Closure-based generating test.
    pub fn is_generating(&self) -> bool {
        closure(&self.members, self.modulus)
            .map(|g| g.len() == 2 * self.modulus as usize)
            .unwrap_or(false)
    }

    /// Formula-based generating test for the shapes `{a^i b, a^j b}` and
    /// `{a^{n/2}, a^i b, a^j b}`; `None` for every other shape.
    pub fn is_generating_fast(&self) -> Option<bool> {
        let n = u64::from(self.modulus);
        let refl: Vec<u64> = self.reflections().map(|r| u64::from(r.exponent)).collect();
        let rot: Vec<u64> = self.rotations().map(|r| u64::from(r.exponent)).collect();
        if refl.len() != 2 {
            return None;
        }
        let g = gcd((refl[1] + n - refl[0]) % n, n);
        match rot.as_slice() {
            [] => Some(g == 1),
            [half] if n % 2 == 0 && *half == n / 2 => Some(match g {
                1 => true,
                2 => n % 4 == 2,
                _ => false,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in &self.members {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Text form paired with its modulus, `"<n>:<set>"`, for contexts that need a
/// self-contained string.
impl FromStr for ConnectionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, set) = s
            .split_once(':')
            .ok_or_else(|| Error::BadToken(s.to_string()))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::BadToken(n.trim().to_string()))?;
        Self::parse(set, n)
    }
}

impl Serialize for DihedralElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for ConnectionSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for ConnectionSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{}", self.modulus, self))
    }
}
