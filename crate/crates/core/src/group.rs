//! Groups generated by sets of permutations.
//!
//! Two independent engines: [`bfs_enumerate`] lists every element and is only
//! practical for small groups; [`schreier_sims`] builds a stabilizer chain and
//! gives exact orders for large ones.

use indexmap::IndexSet;
use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_BFS_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub perm: Perm,
}

impl Generator {
    pub fn new(label: impl Into<String>, perm: Perm) -> Self {
        Generator {
            label: label.into(),
            perm,
        }
    }
}

/// Labels generators `g1, g2, ...`.
pub fn unlabeled(perms: &[Perm]) -> Vec<Generator> {
    perms
        .iter()
        .enumerate()
        .map(|(i, p)| Generator::new(format!("g{}", i + 1), p.clone()))
        .collect()
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Group elements in breadth-first discovery order, identity first.
    pub elements: IndexSet<Perm>,
    pub generators: Vec<Generator>,
    /// False when the cap stopped the search early.
    pub complete: bool,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first closure of the identity under right multiplication by the generators.
pub fn bfs_enumerate(degree: usize, generators: &[Generator], cap: usize) -> Result<Enumeration> {
    if cap == 0 {
        return Err(Error::InvalidParams(
            "enumeration cap must be at least 1".into(),
        ));
    }
    for g in generators {
        if g.perm.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.perm.degree(),
            });
        }
    }
    let mut elements = IndexSet::new();
    elements.insert(Perm::identity(degree)?);
    let mut complete = true;
    let mut next = 0;
    'search: while next < elements.len() {
        for g in generators {
            let product = elements[next].compose(&g.perm)?;
            if elements.contains(&product) {
                continue;
            }
            if elements.len() == cap {
                complete = false;
                break 'search;
            }
            elements.insert(product);
        }
        next += 1;
    }
    Ok(Enumeration {
        elements,
        generators: generators.to_vec(),
        complete,
    })
}

/// One level of a stabilizer chain.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub base_point: usize,
    /// Generators of the stabilizer of all earlier base points.
    pub generators: Vec<Perm>,
    /// Orbit of the base point in discovery order.
    pub orbit: Vec<usize>,
    /// `inverse_reps[p]` is the inverse of a coset representative `u` with
    /// `u(base_point) = p`; kept inverted because sifting divides by it.
    inverse_reps: Vec<Option<Perm>>,
}

impl ChainLevel {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut inverse_reps = vec![None; degree];
        inverse_reps[base_point] = Some(Perm::identity(degree).expect("degree >= 1"));
        ChainLevel {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            inverse_reps,
        }
    }

    /// Coset representative sending the base point to `point`, if it lies in the orbit.
    pub fn representative(&self, point: usize) -> Option<Perm> {
        self.inverse_reps
            .get(point)
            .and_then(|r| r.as_ref())
            .map(Perm::inverse)
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Debug, Clone)]
pub struct Bsgs {
    degree: usize,
    input_generators: Vec<Perm>,
    levels: Vec<ChainLevel>,
}

impl Bsgs {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn input_generators(&self) -> &[Perm] {
        &self.input_generators
    }

    /// All distinct generators stored anywhere in the chain.
    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut all: IndexSet<Perm> = IndexSet::new();
        for level in &self.levels {
            all.extend(level.generators.iter().cloned());
        }
        all.into_iter().collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(ChainLevel::orbit_len).collect()
    }

    /// Product of the transversal sizes.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit_len()))
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        let (residue, level) = self.sift(0, p.clone());
        Ok(level == self.levels.len() && residue.is_identity())
    }

    /// Divides `g` by transversal elements from `start` downwards. Returns the
    /// residue and the level where sifting stopped (`levels.len()` if it ran
    /// through the whole chain).
    fn sift(&self, start: usize, mut g: Perm) -> (Perm, usize) {
        for (depth, level) in self.levels.iter().enumerate().skip(start) {
            let point = g.image(level.base_point);
            match &level.inverse_reps[point] {
                Some(inv) => g = g.compose(inv).expect("common degree"),
                None => return (g, depth),
            }
        }
        (g, self.levels.len())
    }

    /// Adds `g` as a generator of the stabilizer at `depth`; `g` must fix every
    /// earlier base point.
    fn add_generator(&mut self, depth: usize, g: Perm) {
        let (residue, _) = self.sift(depth, g.clone());
        if residue.is_identity() {
            return;
        }
        if depth == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&i| g.image(i) != i)
                .expect("non-identity element moves a point");
            self.levels.push(ChainLevel::new(moved, self.degree));
        }

        let level = &mut self.levels[depth];
        level.generators.push(g);
        let new_gen = level.generators.len() - 1;
        let old_orbit_len = level.orbit.len();

        // Pairs (orbit point, generator) whose Schreier generator has not been
        // sifted yet: every old point with the new generator, then every newly
        // reached point with every generator.
        let mut pending: Vec<(usize, usize)> =
            (0..old_orbit_len).map(|pos| (pos, new_gen)).collect();
        let mut cursor = 0;
        while cursor < pending.len() {
            let (pos, gen) = pending[cursor];
            cursor += 1;
            let schreier = {
                let level = &mut self.levels[depth];
                let point = level.orbit[pos];
                let s = &level.generators[gen];
                let target = s.image(point);
                let u_point = level.inverse_reps[point]
                    .as_ref()
                    .expect("orbit point has a representative")
                    .inverse();
                let u_point_s = u_point.compose(s).expect("common degree");
                match &level.inverse_reps[target] {
                    Some(inv) => u_point_s.compose(inv).expect("common degree"),
                    None => {
                        level.inverse_reps[target] = Some(u_point_s.inverse());
                        level.orbit.push(target);
                        let new_pos = level.orbit.len() - 1;
                        pending.extend((0..level.generators.len()).map(|gi| (new_pos, gi)));
                        continue;
                    }
                }
            };
            if !schreier.is_identity() {
                self.add_generator(depth + 1, schreier);
            }
        }
    }
}

/// Deterministic Schreier–Sims. Each new chain level takes as base point the
/// smallest point moved by the element that opened it.
pub fn schreier_sims(generators: &[Perm]) -> Result<Bsgs> {
    let degree = generators.first().ok_or(Error::EmptyGeneratorSet)?.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: g.degree(),
        });
    }
    let mut chain = Bsgs {
        degree,
        input_generators: generators.to_vec(),
        levels: Vec::new(),
    };
    for g in generators {
        chain.add_generator(0, g.clone());
    }
    Ok(chain)
}

pub fn group_order(chain: &Bsgs) -> BigUint {
    chain.order()
}

pub fn contains(chain: &Bsgs, p: &Perm) -> Result<bool> {
    chain.contains(p)
}
