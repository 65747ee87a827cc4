//! Perfect m-shuffles and the permutations derived from them.
//!
//! A deck of `m * n` cards is cut into `m` stacks of `n` cards and the stacks
//! are interlaced one card at a time. The out shuffle picks up the stacks left
//! to right (the top card stays on top); the in shuffle picks them up right to
//! left (the top card lands at position `m - 1`).
//!
//! On decks of `m^k` cards a position is a `k`-digit base-`m` number, and both
//! shuffles act as digit rotations (see [`digit_action`]).

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShuffleKind {
    Out,
    In,
}

impl ShuffleKind {
    pub fn letter(self) -> char {
        match self {
            ShuffleKind::Out => 'O',
            ShuffleKind::In => 'I',
        }
    }
}

/// `m` stacks of `n` cards each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckParams {
    m: usize,
    n: usize,
}

impl DeckParams {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 stacks, got m = {m}"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidParams(
                "stacks must hold at least one card".into(),
            ));
        }
        match m.checked_mul(n) {
            Some(size) if size as u64 <= MAX_DEGREE => Ok(DeckParams { m, n }),
            _ => Err(Error::DegreeBound { limit: MAX_DEGREE }),
        }
    }

    /// Splits a deck of `deck_size` cards into `m` stacks; `m` must divide the deck.
    pub fn for_deck(deck_size: usize, m: usize) -> Result<Self> {
        if m == 0 || !deck_size.is_multiple_of(m) {
            return Err(Error::InvalidParams(format!(
                "{m} stacks do not divide a deck of {deck_size} cards"
            )));
        }
        DeckParams::new(m, deck_size / m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn deck_size(&self) -> usize {
        self.m * self.n
    }
}

/// A deck of `m^k` cards shuffled with `m^y`-shuffles, `1 <= y < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDeckParams {
    pub m: usize,
    pub k: usize,
    pub y: usize,
    pub c: usize,
}

impl PowerDeckParams {
    pub fn new(m: usize, k: usize, y: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!(
                "base must be at least 2, got m = {m}"
            )));
        }
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 digits, got k = {k}"
            )));
        }
        if y == 0 || y >= k {
            return Err(Error::InvalidParams(format!(
                "shuffle exponent must satisfy 1 <= y < k, got y = {y}, k = {k}"
            )));
        }
        power_deck_size(m, k)?;
        Ok(PowerDeckParams {
            m,
            k,
            y,
            c: y.gcd(&k),
        })
    }

    pub fn deck_size(&self) -> usize {
        self.m.pow(self.k as u32)
    }

    /// Number of stacks in one `m^y`-shuffle.
    pub fn stacks(&self) -> usize {
        self.m.pow(self.y as u32)
    }

    /// The equivalent problem over base-`m^c` digits: `(m^c, k/c, y/c)`.
    pub fn reduced(&self) -> PowerDeckParams {
        let c = self.c;
        PowerDeckParams {
            m: self.m.pow(c as u32),
            k: self.k / c,
            y: self.y / c,
            c: 1,
        }
    }
}

/// `m^k`, rejected when it exceeds the dense-permutation bound.
pub fn power_deck_size(m: usize, k: usize) -> Result<usize> {
    match m.checked_pow(k as u32) {
        Some(size) if size as u64 <= MAX_DEGREE => Ok(size),
        _ => Err(Error::DegreeBound { limit: MAX_DEGREE }),
    }
}

/// Out m-shuffle: the bottom card is fixed and `i -> m*i mod (mn - 1)` otherwise.
pub fn out_shuffle(p: &DeckParams) -> Perm {
    let size = p.deck_size() as u64;
    let m = p.m as u64;
    let dest = (0..size)
        .map(|i| {
            if i == size - 1 {
                i as u32
            } else {
                (m * i % (size - 1)) as u32
            }
        })
        .collect();
    Perm::from_dest_unchecked(dest)
}

/// In m-shuffle: `i -> m*i + (m - 1) mod (mn + 1)`.
pub fn in_shuffle(p: &DeckParams) -> Perm {
    let size = p.deck_size() as u64;
    let m = p.m as u64;
    let dest = (0..size)
        .map(|i| ((m * i + m - 1) % (size + 1)) as u32)
        .collect();
    Perm::from_dest_unchecked(dest)
}

pub fn shuffle(p: &DeckParams, kind: ShuffleKind) -> Perm {
    match kind {
        ShuffleKind::Out => out_shuffle(p),
        ShuffleKind::In => in_shuffle(p),
    }
}

/// Builds a shuffle by laying the deck out as `m` columns of `n` cards and
/// counting how many cards are picked up before each one. Uses no modular
/// arithmetic, so it serves as an independent check on [`out_shuffle`] and
/// [`in_shuffle`].
pub fn stack_interleave_oracle(p: &DeckParams, kind: ShuffleKind) -> Perm {
    let (m, n) = (p.m, p.n);
    let mut dest = vec![0u32; m * n];
    for row in 1..=n {
        for col in 1..=m {
            let original = (col - 1) * n + (row - 1);
            let picked_before = match kind {
                ShuffleKind::Out => (col - 1) + (row - 1) * m,
                ShuffleKind::In => (m - col) + (row - 1) * m,
            };
            dest[original] = picked_before as u32;
        }
    }
    Perm::from_dest_unchecked(dest)
}

/// Base-`m` expansion of a card position, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    base: usize,
    digits: Vec<usize>,
}

impl DigitVector {
    pub fn new(base: usize, digits: Vec<usize>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidParams(format!(
                "base must be at least 2, got {base}"
            )));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit, base });
        }
        Ok(DigitVector { base, digits })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Replaces digit `x` by `(base - 1) - x` at each 0-based position.
    pub fn flipped(&self, positions: &[usize]) -> DigitVector {
        let mut digits = self.digits.clone();
        for &p in positions {
            digits[p] = self.base - 1 - digits[p];
        }
        DigitVector {
            base: self.base,
            digits,
        }
    }
}

pub fn index_to_digits(index: usize, base: usize, k: usize) -> Result<DigitVector> {
    if base < 2 {
        return Err(Error::InvalidParams(format!(
            "base must be at least 2, got {base}"
        )));
    }
    let in_range = base.checked_pow(k as u32).is_none_or(|size| index < size);
    if !in_range {
        return Err(Error::IndexOutOfRange {
            index,
            base,
            digits: k,
        });
    }
    let mut digits = vec![0; k];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = rest % base;
        rest /= base;
    }
    Ok(DigitVector { base, digits })
}

pub fn digits_to_index(d: &DigitVector) -> usize {
    d.digits.iter().fold(0, |acc, &x| acc * d.base + x)
}

/// Effect of an `m^y`-shuffle on base-`m` digits.
///
/// Out rotates the digits left by `y`. In does the same and then flips the
/// `y` digits that wrapped around to the end.
pub fn digit_action(kind: ShuffleKind, y: usize, d: &DigitVector) -> Result<DigitVector> {
    let k = d.len();
    if y == 0 || y > k {
        return Err(Error::InvalidParams(format!(
            "rotation must satisfy 1 <= y <= {k}, got {y}"
        )));
    }
    let mut digits = d.digits.clone();
    digits.rotate_left(y);
    let rotated = DigitVector {
        base: d.base,
        digits,
    };
    Ok(match kind {
        ShuffleKind::Out => rotated,
        ShuffleKind::In => rotated.flipped(&((k - y)..k).collect::<Vec<_>>()),
    })
}

/// Permutation of `base^k` positions induced by a map on digit vectors.
pub fn perm_from_digit_map<F>(base: usize, k: usize, mut f: F) -> Result<Perm>
where
    F: FnMut(&DigitVector) -> DigitVector,
{
    let size = power_deck_size(base, k)?;
    let mut dest = Vec::with_capacity(size);
    for i in 0..size {
        let digits = index_to_digits(i, base, k)?;
        dest.push(digits_to_index(&f(&digits)) as u32);
    }
    Perm::from_dest(dest)
}

/// The `m^y`-shuffle on `m^k` cards, built as the `y`-th power of the m-shuffle.
pub fn power_shuffle(p: &PowerDeckParams, kind: ShuffleKind) -> Perm {
    base_shuffle(p.m, p.k, kind).power(p.y as i64)
}

/// The plain m-shuffle on `m^k` cards.
fn base_shuffle(m: usize, k: usize, kind: ShuffleKind) -> Perm {
    let n = m.pow(k as u32 - 1);
    shuffle(&DeckParams { m, n }, kind)
}

fn check_generator_args(j: usize, m: usize, k: usize) -> Result<()> {
    if m < 2 || k < 1 {
        return Err(Error::InvalidParams(format!(
            "need m >= 2 and k >= 1, got m = {m}, k = {k}"
        )));
    }
    power_deck_size(m, k)?;
    if j == 0 || j > k {
        return Err(Error::InvalidParams(format!(
            "generator index must satisfy 1 <= j <= {k}, got {j}"
        )));
    }
    Ok(())
}

/// `B_j = O^(j-1) * I * O^(-j)` on `m^k` cards (1-based `j`); flips digit `j`.
pub fn b_generator(j: usize, m: usize, k: usize) -> Result<Perm> {
    check_generator_args(j, m, k)?;
    let out = base_shuffle(m, k, ShuffleKind::Out);
    let inn = base_shuffle(m, k, ShuffleKind::In);
    out.power(j as i64 - 1)
        .compose(&inn)?
        .compose(&out.power(-(j as i64)))
}

/// `C_j = O^(j-1) * I^2 * O^(-(j+1))` on `m^k` cards (1-based `j`, `k >= 2`).
///
/// Flips digits `j` and `j + 1`; `C_k` flips the first and last digits.
pub fn c_generator(j: usize, m: usize, k: usize) -> Result<Perm> {
    check_generator_args(j, m, k)?;
    if k < 2 {
        return Err(Error::InvalidParams("C generators need k >= 2".into()));
    }
    let out = base_shuffle(m, k, ShuffleKind::Out);
    let in_squared = base_shuffle(m, k, ShuffleKind::In).power(2);
    out.power(j as i64 - 1)
        .compose(&in_squared)?
        .compose(&out.power(-(j as i64 + 1)))
}
