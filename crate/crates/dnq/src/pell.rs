//! Norm-form equations `x² − d·y² = N`.
//!
//! The continued fraction of `√d` yields the fundamental unit; a classical
//! bound then makes the general equation decidable for small `|N|` by a
//! finite scan: every solution class of `x² − d·y² = N` contains a
//! representative with `0 ≤ y ≤ √(|N|·(x₁ + 1) / (2d))`, where `(x₁, y₁)`
//! is the fundamental solution of norm `+1`. Negative results therefore
//! come with the exhausted bound as a certificate rather than as a claim.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::quadring::{decimal, exact_sqrt, RingCtx, RingElt};

/// Largest |N| `solve_norm` accepts; the scan bound grows like `√|N|`.
pub const NORM_POLICY_LIMIT: i64 = 1_000_000;

/// Cap for the opportunistic witness scan used by [`hypothesis_check`]
/// before falling back to a full certified scan.
const QUICK_WITNESS_CAP: u64 = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PellError {
    #[error("{0} is a perfect square; √d is rational")]
    PerfectSquare(BigInt),
    #[error("target norm {0} outside policy range 1..={NORM_POLICY_LIMIT} in absolute value")]
    NormOutOfPolicy(i64),
    #[error(
        "exhaustive bound {required} exceeds the configured ceiling {ceiling}; refusing to certify"
    )]
    BoundOverflow { required: BigInt, ceiling: u64 },
    #[error("x² − d·y² = {0} has no integer solutions")]
    Unsolvable(i64),
    #[error("established implication failed: {0}")]
    TheoremViolation(String),
}

impl PellError {
    pub fn code(&self) -> &'static str {
        match self {
            PellError::PerfectSquare(_) => "perfect_square",
            PellError::NormOutOfPolicy(_) => "norm_out_of_policy",
            PellError::BoundOverflow { .. } => "bound_overflow",
            PellError::Unsolvable(_) => "unsolvable",
            PellError::TheoremViolation(_) => "theorem_violation",
        }
    }
}

/// Periodic continued fraction of `√d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pub a0: BigInt,
    pub period: Vec<BigInt>,
}

/// Standard `(P, Q)` recurrence for `√d = [a0; a1, a2, …]`. The period
/// closes exactly when `Q` returns to 1, at the partial quotient `2·a0`.
pub fn cf_sqrt(d: &BigInt) -> Result<CFExpansion, PellError> {
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        return Err(PellError::PerfectSquare(d.clone()));
    }
    let mut period = Vec::new();
    let mut p = a0.clone();
    let mut q = d - &a0 * &a0;
    loop {
        let a = (&a0 + &p).div_floor(&q);
        period.push(a.clone());
        if q.is_one() {
            return Ok(CFExpansion { a0, period });
        }
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
    }
}

/// Minimal `y > 0` solution of `x² − d·y² = ±1`: the convergent at the end
/// of the first period. The reported norm is `(−1)^period_len`.
pub fn fundamental_unit(d: &BigInt) -> Result<(BigInt, BigInt, i8), PellError> {
    let cf = cf_sqrt(d)?;
    let mut h_prev = BigInt::one();
    let mut h = cf.a0.clone();
    let mut k_prev = BigInt::ZERO;
    let mut k = BigInt::one();
    for a in &cf.period[..cf.period.len() - 1] {
        let h_next = a * &h + &h_prev;
        let k_next = a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    let norm = if cf.period.len() % 2 == 1 { -1 } else { 1 };
    debug_assert_eq!(&h * &h - d * &k * &k, BigInt::from(norm));
    Ok((h, k, norm))
}

/// Complete set of solution-class representatives of `x² − d·y² = target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolutionSet {
    #[serde(with = "decimal")]
    pub d: BigInt,
    pub target: i64,
    /// Canonical class representatives (minimal `|y|`, sign-normalized),
    /// sorted by `(|y|, |x|)` with positive components preferred.
    pub primitives: Vec<RingElt>,
    pub solvable: bool,
    /// The scan over `0 ≤ y ≤ search_bound` was exhaustive; an empty
    /// `primitives` list is therefore a certificate of unsolvability.
    #[serde(with = "decimal")]
    pub search_bound: BigInt,
}

/// Sign normalization for solutions: `x > 0`, or `x = 0 ∧ y > 0`.
fn sign_normalize(e: RingElt) -> RingElt {
    if e.re.is_negative() || (e.re.is_zero() && e.im.is_negative()) {
        -&e
    } else {
        e
    }
}

fn order_key(e: &RingElt) -> (BigInt, BigInt, bool, bool) {
    (
        e.im.abs(),
        e.re.abs(),
        e.im.is_negative(),
        e.re.is_negative(),
    )
}

/// Reduce a solution to the canonical representative of its class: the
/// element of minimal `|y|`, sign-normalized, preferring positive `y`.
/// Two solutions are equivalent exactly when their quotient is a unit of
/// norm `+1`; `−1` is such a unit, so negation never leaves the class.
pub fn canonical_rep(ctx: &RingCtx, sol: &RingElt) -> RingElt {
    let u = ctx.plus_unit().clone();
    let u_inv = u.conj();
    let mut cur = sol.clone();
    loop {
        let down = ctx.mul(&cur, &u_inv);
        let up = ctx.mul(&cur, &u);
        let next = if down.im.abs() <= up.im.abs() {
            down
        } else {
            up
        };
        if next.im.abs() < cur.im.abs() {
            cur = next;
        } else {
            break;
        }
    }
    // |y| is minimal; at most two class members share it.
    let mut best: Option<RingElt> = None;
    for cand in [cur.clone(), ctx.mul(&cur, &u), ctx.mul(&cur, &u_inv)] {
        if cand.im.abs() != cur.im.abs() {
            continue;
        }
        let cand = sign_normalize(cand);
        best = Some(match best.take() {
            None => cand,
            Some(prev) => {
                if (&cand.im, &cand.re) > (&prev.im, &prev.re) {
                    cand
                } else {
                    prev
                }
            }
        });
    }
    best.expect("candidate set contains cur")
}

/// Solve `x² − d·y² = target` completely: scan `y` up to the classical
/// bound, reduce every hit to its canonical class representative, dedup.
///
/// Errors with [`PellError::BoundOverflow`] instead of returning an
/// uncertified answer when the bound exceeds the context ceiling.
pub fn solve_norm(ctx: &RingCtx, target: i64) -> Result<PellSolutionSet, PellError> {
    if target == 0 || target.abs() > NORM_POLICY_LIMIT {
        return Err(PellError::NormOutOfPolicy(target));
    }
    let d = ctx.d();
    let x1 = &ctx.plus_unit().re;
    let numerator: BigInt = BigInt::from(target.abs()) * (x1 + 1u8);
    let bound: BigInt = (numerator / (BigInt::from(2) * d)).sqrt() + 1u8;
    if bound > BigInt::from(ctx.bound_ceiling()) {
        return Err(PellError::BoundOverflow {
            required: bound,
            ceiling: ctx.bound_ceiling(),
        });
    }
    let mut reps: Vec<RingElt> = Vec::new();
    let mut push = |cand: RingElt| {
        let rep = canonical_rep(ctx, &cand);
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    };
    let mut y = BigInt::ZERO;
    let mut t = BigInt::from(target); // t = target + d·y²
    while y <= bound {
        if let Some(x) = exact_sqrt(&t) {
            push(RingElt {
                re: x.clone(),
                im: y.clone(),
            });
            if !x.is_zero() {
                push(RingElt {
                    re: -x,
                    im: y.clone(),
                });
            }
        }
        t += d * (2 * &y + 1);
        y += 1;
    }
    reps.sort_by_key(order_key);
    Ok(PellSolutionSet {
        d: d.clone(),
        target,
        solvable: !reps.is_empty(),
        primitives: reps,
        search_bound: bound,
    })
}

/// First `count` solutions of `x² − d·y² = target`: each primitive
/// multiplied by successive powers of the norm `+1` fundamental solution,
/// sign-normalized, merged by `(|y|, |x|)`, deduplicated.
pub fn enumerate_norm(ctx: &RingCtx, target: i64, count: usize) -> Result<Vec<RingElt>, PellError> {
    let set = ctx.solution_set(target)?;
    if !set.solvable {
        return Err(PellError::Unsolvable(target));
    }
    let u = ctx.plus_unit().clone();
    let mut all = Vec::with_capacity(set.primitives.len() * (count + 4));
    for prim in &set.primitives {
        let mut cur = prim.clone();
        for _ in 0..count + 4 {
            all.push(sign_normalize(cur.clone()));
            cur = ctx.mul(&cur, &u);
        }
    }
    all.sort_by_key(order_key);
    all.dedup();
    all.truncate(count);
    Ok(all)
}

/// Bounded witness scan, no completeness claim: first solution with
/// `0 ≤ y ≤ y_cap`, if any.
pub fn find_witness(ctx: &RingCtx, target: i64, y_cap: u64) -> Option<RingElt> {
    let d = ctx.d();
    let mut t = BigInt::from(target);
    for y in 0..=y_cap {
        if let Some(x) = exact_sqrt(&t) {
            return Some(RingElt {
                re: x,
                im: BigInt::from(y),
            });
        }
        t += d * BigInt::from(2 * y + 1);
    }
    None
}

/// Solvability status of one norm equation, with the evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Solvability {
    Solvable {
        witness: RingElt,
    },
    Unsolvable {
        certificate: UnsolvableCert,
    },
    Unknown {
        #[serde(with = "decimal")]
        required_bound: BigInt,
        ceiling: u64,
    },
}

impl Solvability {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solvability::Solvable { .. })
    }

    pub fn witness(&self) -> Option<&RingElt> {
        match self {
            Solvability::Solvable { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnsolvableCert {
    /// All `0 ≤ y ≤ bound` were checked and the bound is exhaustive.
    ScanExhausted {
        #[serde(with = "decimal")]
        bound: BigInt,
    },
    /// `x² − d·y² = −1` is solvable iff the fundamental unit has norm −1.
    UnitNormPositive,
}

/// Standing-hypothesis report for a ring: solvability of norms `−1`, `6`,
/// `−6` plus `d mod 48`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub d_mod_48: u8,
    pub norm_minus_one: Solvability,
    pub norm_six: Solvability,
    pub norm_minus_six: Solvability,
    /// Both hypothesis equations solvable.
    pub holds: bool,
}

/// Decide the hypothesis equations and assert their established
/// consequences: if norms `−1` and `6` are both attained then
/// `d ≡ 10 (mod 48)` and norm `−6` is attained as well. A counterexample
/// to the implication surfaces as [`PellError::TheoremViolation`].
pub fn hypothesis_check(ctx: &RingCtx) -> Result<HypothesisReport, PellError> {
    let d_mod_48 = u8::try_from(&ctx.d().mod_floor(&BigInt::from(48))).unwrap();

    let (fund, unit_norm) = ctx.fund_unit();
    let norm_minus_one = if unit_norm == -1 {
        Solvability::Solvable {
            witness: fund.clone(),
        }
    } else {
        Solvability::Unsolvable {
            certificate: UnsolvableCert::UnitNormPositive,
        }
    };

    let decide = |target: i64| -> Solvability {
        if let Some(w) = find_witness(ctx, target, QUICK_WITNESS_CAP) {
            return Solvability::Solvable { witness: w };
        }
        match ctx.solution_set(target) {
            Ok(set) if set.solvable => Solvability::Solvable {
                witness: set.primitives[0].clone(),
            },
            Ok(set) => Solvability::Unsolvable {
                certificate: UnsolvableCert::ScanExhausted {
                    bound: set.search_bound.clone(),
                },
            },
            Err(PellError::BoundOverflow { required, ceiling }) => Solvability::Unknown {
                required_bound: required,
                ceiling,
            },
            Err(e) => panic!("norm {target} in policy range: {e}"),
        }
    };

    let norm_six = decide(6);

    // A norm −6 witness drops out of the two hypothesis witnesses.
    let norm_minus_six = match (&norm_minus_one, &norm_six) {
        (Solvability::Solvable { witness: w1 }, Solvability::Solvable { witness: w6 }) => {
            let w = ctx.mul(w6, w1);
            if ctx.norm(&w) != BigInt::from(-6) {
                return Err(PellError::TheoremViolation(format!(
                    "product of norm 6 and norm -1 witnesses has norm {}",
                    ctx.norm(&w)
                )));
            }
            Solvability::Solvable {
                witness: sign_normalize(w),
            }
        }
        _ => decide(-6),
    };

    let holds = norm_minus_one.is_solvable() && norm_six.is_solvable();
    if holds {
        if d_mod_48 != 10 {
            return Err(PellError::TheoremViolation(format!(
                "hypothesis holds but d ≡ {d_mod_48} (mod 48)"
            )));
        }
        if !norm_minus_six.is_solvable() {
            return Err(PellError::TheoremViolation(
                "hypothesis holds but no norm -6 element was found".into(),
            ));
        }
    }

    Ok(HypothesisReport {
        d_mod_48,
        norm_minus_one,
        norm_six,
        norm_minus_six,
        holds,
    })
}
