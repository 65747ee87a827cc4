//! Dense permutations of card positions.
//!
//! A [`Perm`] is stored as a *destination map*: `dest[i]` is the position the
//! card currently at position `i` moves to. Products are read **left to
//! right**: `a.compose(&b)` applies `a` first and then `b`. Most group-theory
//! software composes right to left, so keep this in mind when porting
//! formulas such as `O^(j-1) * I * O^(-j)`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    dest: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Perm {
    pub fn identity(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree);
        }
        check_addressable(degree)?;
        Ok(Perm {
            dest: (0..degree as u32).collect(),
        })
    }

    /// Builds a permutation from its destination list, checking that it is a bijection.
    pub fn from_dest(dest: Vec<u32>) -> Result<Self> {
        if dest.is_empty() {
            return Err(Error::InvalidDegree);
        }
        check_addressable(dest.len())?;
        let mut seen = vec![false; dest.len()];
        for &d in &dest {
            match seen.get_mut(d as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(Error::NotABijection { degree: dest.len() }),
            }
        }
        Ok(Perm { dest })
    }

    /// Builds a permutation from a position map that the caller guarantees is a bijection.
    pub(crate) fn from_dest_unchecked(dest: Vec<u32>) -> Self {
        debug_assert!(Perm::from_dest(dest.clone()).is_ok());
        Perm { dest }
    }

    /// Builds a permutation from disjoint cycles, each listed in mapping order.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut dest: Vec<u32> = Perm::identity(degree)?.dest;
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                let next = cycle[(pos + 1) % cycle.len()];
                if point >= degree || next >= degree || touched[point] {
                    return Err(Error::NotABijection { degree });
                }
                touched[point] = true;
                dest[point] = next as u32;
            }
        }
        Ok(Perm { dest })
    }

    pub fn degree(&self) -> usize {
        self.dest.len()
    }

    pub fn dest(&self) -> &[u32] {
        &self.dest
    }

    /// Position that the card at `i` moves to.
    pub fn image(&self, i: usize) -> usize {
        self.dest[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.dest.iter().enumerate().all(|(i, &d)| i as u32 == d)
    }

    /// Applies `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(Perm {
            dest: self.dest.iter().map(|&d| other.dest[d as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.dest.len()];
        for (i, &d) in self.dest.iter().enumerate() {
            inv[d as usize] = i as u32;
        }
        Perm { dest: inv }
    }

    /// `e`-fold product of `self`; negative exponents use the inverse.
    ///
    /// Computed cycle by cycle, so the cost is linear in the degree for any `e`.
    pub fn power(&self, e: i64) -> Perm {
        let mut dest = vec![0u32; self.dest.len()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (pos, &point) in cycle.iter().enumerate() {
                dest[point] = cycle[(pos + shift) % cycle.len()] as u32;
            }
        }
        Perm { dest }
    }

    /// Canonical disjoint-cycle decomposition: each cycle starts at its
    /// smallest point, cycles are ordered by that point, and fixed points
    /// appear as one-element cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dest.len()];
        let mut cycles = Vec::new();
        for start in 0..self.dest.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                cycle.push(point);
                point = self.dest[point] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Least positive `e` with `self^e = id`, the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn parity(&self) -> Parity {
        if (self.degree() - self.cycles().len()).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Rearranges `deck` so that the card at position `i` ends at `dest[i]`.
    pub fn apply_to_deck<T: Clone>(&self, deck: &[T]) -> Result<Vec<T>> {
        if deck.len() != self.degree() {
            return Err(Error::LengthMismatch {
                deck: deck.len(),
                degree: self.degree(),
            });
        }
        let mut out: Vec<Option<T>> = vec![None; deck.len()];
        for (card, &d) in deck.iter().zip(&self.dest) {
            out[d as usize] = Some(card.clone());
        }
        Ok(out.into_iter().map(|c| c.expect("bijection")).collect())
    }

    pub fn commutes_with(&self, other: &Perm) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// `self * g * self^-1` in left-to-right order.
    pub fn conjugate(&self, g: &Perm) -> Result<Perm> {
        self.compose(g)?.compose(&self.inverse())
    }

    /// One-line destination list, e.g. `[0, 2, 1, 3]`.
    pub fn one_line(&self) -> String {
        let items: Vec<String> = self.dest.iter().map(|d| d.to_string()).collect();
        format!("[{}]", items.join(", "))
    }

    fn check_degree(&self, other: &Perm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

pub(crate) const MAX_DEGREE: u64 = 1 << 31;

fn check_addressable(degree: usize) -> Result<()> {
    if degree as u64 > MAX_DEGREE {
        return Err(Error::DegreeBound { limit: MAX_DEGREE });
    }
    Ok(())
}

/// Disjoint-cycle notation, fixed points included: `(0)(1 2)(3)`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let items: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.one_line())
    }
}
