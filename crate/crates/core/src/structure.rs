//! Predicted and verified structure of `<I_{m^y}, O_{m^y}>` on `m^k` cards.
//!
//! With `c = gcd(y, k)` and `t = k / c`, the group is a semidirect product of
//! an elementary abelian 2-group by the cyclic group of order `t`. The 2-rank
//! is `t` when `y / c` is odd (the cyclic factor shifts coordinates) and
//! `t - 1` when `y / c` is even (the "twisted" action of [`twisted_action`]).
//!
//! [`verify`] checks this against the actual permutations: it recomputes the
//! group order with Schreier–Sims and checks the generator relations that pin
//! down the semidirect decomposition.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{bfs_enumerate, schreier_sims, unlabeled, DEFAULT_BFS_CAP};
use crate::perm::Perm;
use crate::shuffles::{
    b_generator, c_generator, out_shuffle, perm_from_digit_map, power_shuffle, DeckParams,
    PowerDeckParams, ShuffleKind,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest deck [`verify`] will attempt; stabilizer-chain transversals are dense.
pub const VERIFY_DEGREE_LIMIT: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionKind {
    CyclicShift,
    Twisted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructurePrediction {
    pub params: PowerDeckParams,
    /// The same group viewed over base-`m^c` digits.
    pub reduced: PowerDeckParams,
    /// Size of the cyclic factor, `k / c`.
    pub t: usize,
    pub abelian_rank: usize,
    pub action: ActionKind,
    #[serde(with = "decimal")]
    pub predicted_order: BigUint,
}

pub fn predict(p: &PowerDeckParams) -> StructurePrediction {
    let reduced = p.reduced();
    let t = reduced.k;
    let (abelian_rank, action) = if reduced.y % 2 == 1 {
        (t, ActionKind::CyclicShift)
    } else {
        (t - 1, ActionKind::Twisted)
    };
    StructurePrediction {
        params: *p,
        reduced,
        t,
        abelian_rank,
        action,
        predicted_order: (BigUint::one() << abelian_rank) * BigUint::from(t),
    }
}

/// Action of the cyclic generator when `y / c` is odd: `(a1..at) -> (at, a1, .., a(t-1))`.
pub fn shift_action(a: &[bool]) -> Vec<bool> {
    let mut out = a.to_vec();
    out.rotate_right(1);
    out
}

/// Action of the cyclic generator when `y / c` is even:
/// `(a1..as) -> (as, a1 + as, a2 + as, .., a(s-1) + as)` over `Z_2`.
pub fn twisted_action(a: &[bool]) -> Vec<bool> {
    let Some(&last) = a.last() else {
        return Vec::new();
    };
    std::iter::once(last)
        .chain(a[..a.len() - 1].iter().map(|&x| x ^ last))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub label: String,
    /// Order exactly 2.
    pub involution: bool,
    /// Flips exactly the expected base-`m^c` digits.
    pub digit_action_matches: bool,
    /// Lies in the shuffle group.
    pub member: bool,
}

impl GeneratorCheck {
    fn ok(&self) -> bool {
        self.involution && self.digit_action_matches && self.member
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub params: PowerDeckParams,
    pub prediction: StructurePrediction,
    #[serde(with = "decimal")]
    pub computed_order: BigUint,
    pub order_matches: bool,
    pub generator_checks: Vec<GeneratorCheck>,
    pub commutation_ok: bool,
    pub conjugation_ok: bool,
    /// `C_1 C_2 ... C_t = id`; vacuously true when `y / c` is odd.
    pub product_relation_ok: bool,
    /// `|<abelian generators>| * |<O_{m^y}>|` equals the computed order.
    pub complement_ok: bool,
    pub verdict: bool,
}

/// The abelian-part generators `B_j` or `C_j` over base-`m^c` digits, with
/// the 0-based digit positions each one flips.
fn flip_generators(prediction: &StructurePrediction) -> Result<Vec<(String, Perm, Vec<usize>)>> {
    let PowerDeckParams { m: base, k: t, .. } = prediction.reduced;
    (1..=t)
        .map(|j| match prediction.action {
            ActionKind::CyclicShift => Ok((format!("B{j}"), b_generator(j, base, t)?, vec![j - 1])),
            ActionKind::Twisted => Ok((
                format!("C{j}"),
                c_generator(j, base, t)?,
                vec![j - 1, j % t],
            )),
        })
        .collect()
}

/// Product of the basis generators selected by `coords`.
fn combine(basis: &[Perm], coords: &[bool], degree: usize) -> Result<Perm> {
    let mut acc = Perm::identity(degree)?;
    for (g, &on) in basis.iter().zip(coords) {
        if on {
            acc = acc.compose(g)?;
        }
    }
    Ok(acc)
}

pub fn verify(p: &PowerDeckParams) -> Result<VerificationReport> {
    let degree = p.deck_size();
    if degree > VERIFY_DEGREE_LIMIT {
        return Err(Error::DegreeBound {
            limit: VERIFY_DEGREE_LIMIT as u64,
        });
    }
    let prediction = predict(p);
    let inn = power_shuffle(p, ShuffleKind::In);
    let out = power_shuffle(p, ShuffleKind::Out);
    let chain = schreier_sims(&[inn, out.clone()])?;
    let computed_order = chain.order();
    let order_matches = computed_order == prediction.predicted_order;

    let base = prediction.reduced.m;
    let t = prediction.t;
    let gens = flip_generators(&prediction)?;

    let mut generator_checks = Vec::with_capacity(gens.len());
    for (label, g, flips) in &gens {
        let expected = perm_from_digit_map(base, t, |d| d.flipped(flips))?;
        generator_checks.push(GeneratorCheck {
            label: label.clone(),
            involution: !g.is_identity() && g.power(2).is_identity(),
            digit_action_matches: *g == expected,
            member: chain.contains(g)?,
        });
    }

    let mut commutation_ok = true;
    for (i, (_, a, _)) in gens.iter().enumerate() {
        for (_, b, _) in &gens[i + 1..] {
            commutation_ok &= a.commutes_with(b)?;
        }
    }

    let perms: Vec<Perm> = gens.iter().map(|(_, g, _)| g.clone()).collect();
    let basis: &[Perm] = match prediction.action {
        ActionKind::CyclicShift => &perms,
        ActionKind::Twisted => &perms[..t - 1],
    };
    let base_out = out_shuffle(&DeckParams::for_deck(degree, base)?);

    // Conjugation table: O B_j O^-1 = B_(j+1), wrapping to B_1; for the twisted
    // case O C_j O^-1 = C_(j+1) up to j = t - 2 and O C_(t-1) O^-1 = C_1 ... C_(t-1).
    let mut conjugation_ok = true;
    for j in 0..basis.len() {
        let conj = base_out.conjugate(&basis[j])?;
        let expected = match prediction.action {
            ActionKind::CyclicShift => perms[(j + 1) % t].clone(),
            ActionKind::Twisted if j + 2 < t => perms[j + 1].clone(),
            ActionKind::Twisted => {
                let all = combine(basis, &vec![true; basis.len()], degree)?;
                conjugation_ok &= all == perms[t - 1];
                all
            }
        };
        conjugation_ok &= conj == expected;

        // Same relation read through the action on coordinate vectors.
        let mut unit = vec![false; basis.len()];
        unit[j] = true;
        let image = match prediction.action {
            ActionKind::CyclicShift => shift_action(&unit),
            ActionKind::Twisted => twisted_action(&unit),
        };
        conjugation_ok &= conj == combine(basis, &image, degree)?;
    }

    let product_relation_ok = match prediction.action {
        ActionKind::CyclicShift => true,
        ActionKind::Twisted => combine(&perms, &vec![true; t], degree)?.is_identity(),
    };

    let abelian = bfs_enumerate(degree, &unlabeled(basis), DEFAULT_BFS_CAP)?;
    let complement_ok =
        abelian.complete && BigUint::from(abelian.len()) * out.order() == computed_order;

    let verdict = order_matches
        && generator_checks.iter().all(GeneratorCheck::ok)
        && commutation_ok
        && conjugation_ok
        && product_relation_ok
        && complement_ok;

    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        params: *p,
        prediction,
        computed_order,
        order_matches,
        generator_checks,
        commutation_ok,
        conjugation_ok,
        product_relation_ok,
        complement_ok,
        verdict,
    })
}

/// True iff cards equidistant from the centre stay equidistant:
/// `dest[i] + dest[N-1-i] = N - 1` for every `i`.
pub fn central_symmetry(p: &Perm) -> bool {
    let last = p.degree() - 1;
    (0..p.degree()).all(|i| p.image(i) + p.image(last - i) == last)
}

/// `n! * 2^n`, the order of the group of centrally symmetric permutations of `2n` cards.
pub fn symmetry_bound(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i)) << n
}

/// Serializes big naturals as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("not a decimal natural: {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{bfs_enumerate, unlabeled};
    use crate::shuffles::in_shuffle;

    fn params(m: usize, k: usize, y: usize) -> PowerDeckParams {
        PowerDeckParams::new(m, k, y).unwrap()
    }

    #[test]
    fn prediction_examples() {
        for m in [2, 3, 7] {
            let p = predict(&params(m, 2, 1));
            assert_eq!(p.predicted_order, BigUint::from(8u32));
            assert_eq!(p.action, ActionKind::CyclicShift);
            assert_eq!(p.abelian_rank, 2);
        }
        let a4 = predict(&params(2, 3, 2));
        assert_eq!(a4.predicted_order, BigUint::from(12u32));
        assert_eq!(a4.action, ActionKind::Twisted);
        assert_eq!(a4.abelian_rank, 2);

        let p = predict(&params(2, 4, 2));
        assert_eq!((p.params.c, p.t, p.abelian_rank), (2, 2, 2));
        assert_eq!(p.predicted_order, BigUint::from(8u32));
    }

    #[test]
    fn small_case_orders_of_two_to_the_k_times_k() {
        for k in 2..=10 {
            let expected = (BigUint::one() << k) * BigUint::from(k);
            assert_eq!(predict(&params(2, k, 1)).predicted_order, expected);
        }
    }

    #[test]
    fn reduction_is_consistent() {
        for m in 2..=4 {
            for k in 2..=8 {
                for y in 1..k {
                    let p = params(m, k, y);
                    let r = p.reduced();
                    let a = predict(&p);
                    let b = predict(&PowerDeckParams::new(r.m, r.k, r.y).unwrap());
                    assert_eq!(
                        (a.t, a.abelian_rank, &a.predicted_order),
                        (b.t, b.abelian_rank, &b.predicted_order)
                    );
                }
            }
        }
    }

    #[test]
    fn action_formulas() {
        assert_eq!(
            shift_action(&[true, false, false]),
            vec![false, true, false]
        );
        assert_eq!(
            shift_action(&[false, false, true]),
            vec![true, false, false]
        );
        assert_eq!(twisted_action(&[true, false]), vec![false, true]);
        assert_eq!(twisted_action(&[false, true]), vec![true, true]);
        assert_eq!(twisted_action(&[true, true]), vec![true, false]);
    }

    #[test]
    fn verify_examples() {
        for (m, k, y, order) in [
            (2, 3, 1, 24u32),
            (2, 4, 3, 64),
            (3, 2, 1, 8),
            (2, 3, 2, 12),
            (3, 4, 2, 8),
        ] {
            let report = verify(&params(m, k, y)).unwrap();
            assert!(report.verdict, "{m} {k} {y}: {report:?}");
            assert_eq!(report.computed_order, BigUint::from(order));
        }
    }

    #[test]
    fn verify_rejects_large_decks() {
        assert!(matches!(
            verify(&params(2, 14, 1)),
            Err(Error::DegreeBound { limit: 8192 })
        ));
    }

    #[test]
    fn report_json_round_trip() {
        let report = verify(&params(2, 5, 2)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"computed_order\":\"80\""));
        assert!(json.contains("\"action\":\"twisted\""));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn central_symmetry_examples() {
        assert!(central_symmetry(&Perm::identity(7).unwrap()));
        for n in 1..20 {
            for m in [2, 3, 4] {
                if let Ok(p) = DeckParams::for_deck(2 * n, m) {
                    assert!(central_symmetry(&out_shuffle(&p)));
                    assert!(central_symmetry(&in_shuffle(&p)));
                }
            }
        }
        let swap = Perm::from_cycles(8, &[vec![0, 1]]).unwrap();
        assert!(!central_symmetry(&swap));
        // odd deck: middle card must stay put
        let mid = Perm::from_cycles(5, &[vec![1, 2, 3]]).unwrap();
        assert!(!central_symmetry(&mid));
    }

    #[test]
    fn symmetry_bounds() {
        assert_eq!(symmetry_bound(2), BigUint::from(8u32));
        assert_eq!(symmetry_bound(3), BigUint::from(48u32));
        let gens = unlabeled(&[
            in_shuffle(&DeckParams::new(3, 2).unwrap()),
            out_shuffle(&DeckParams::new(3, 2).unwrap()),
        ]);
        assert_eq!(
            BigUint::from(bfs_enumerate(6, &gens, 100).unwrap().len()),
            symmetry_bound(3)
        );
        let fifteen = (1..=15u64).product::<u64>();
        assert_eq!(symmetry_bound(15), BigUint::from(fifteen) << 15);
    }
}
