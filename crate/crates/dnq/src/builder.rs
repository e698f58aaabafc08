//! The quadruple factory.
//!
//! Given `n` with `a·b + n = r²` the set `{a, b, a+b+2r, a+4b+4r}` has
//! property D(n) as soon as `3n` factors as `α₁·α₂` with
//! `α₁ = a + 2r + α`, `α₂ = a + 2r − α`. Five residue classes of `n`
//! modulo `(4, 4)` admit such a factorization, each with a prescribed norm
//! for the seed `a`:
//!
//! | case | class of `n`     | `α₁`         | `α₂`          | seed norm |
//! |------|------------------|--------------|---------------|-----------|
//! | 1    | `(4m+1, 4k)`     | `−3·conj(u)` | `u·n`         | `+1`      |
//! | 2    | `(4m+1, 4k+2)`   | `−3·conj(u)` | `u·n`         | `−1`      |
//! | 3    | `(4m+3, 4k)`     | `3`          | `n`           | `+1`      |
//! | 4    | `(4m+3, 4k+2)`   | `3`          | `n`           | `−1`      |
//! | 5    | `(4m+2, 4k+2)`   | `conj(v)`    | `v·(n/2)`     | `±1` by `m` |
//!
//! with `u` any norm `−1` element and `v` a norm `+6` element adjusted to
//! the shape `(12M+4, 6N+1)`. The engine mirrors this construction; the
//! [`closed_form`] polynomials give the same `(r, b)` by an independent
//! route and the two are cross-checked in tests. The class `(4m, 4k)` is
//! reached by scaling a quadruple for `n/4` by `w = 2`, since scaling by
//! `w` turns a D(n) set into a D(w²·n) set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::pell::{self, PellError};
use crate::quadring::{classify_mod4, ClassTag, Family, RingCtx, RingElt, RingError};

/// Pair order used everywhere a quadruple reports its six certificates.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// How many consecutive degenerate seeds `construct` tolerates before
/// giving up. Only finitely many seeds degenerate, but no effective bound
/// is available, so this is a loud engineering ceiling.
pub const RETRY_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("n = 0 admits no D(n) set in this construction")]
    ZeroN,
    #[error("class ({0}, {1}) mod (4,4) admits no quadruple at all")]
    SClassNoQuadruple(u8, u8),
    #[error("class ({0}, {1}) mod (4,4) is not covered by the construction")]
    UncoveredClass(u8, u8),
    #[error("required auxiliary element of norm {0} is unavailable")]
    MissingAux(i64),
    #[error("seed has norm {found}, case requires {required}")]
    SeedNormMismatch { required: i8, found: BigInt },
    #[error("seed or auxiliary element violates its residue form: {0}")]
    SeedFormViolation(RingElt),
    #[error("half-sum of the factorization is not integral; wrong factorization/seed residues")]
    ParityFailure,
    #[error("seed produces zero or repeated elements")]
    Degenerate,
    #[error("constructed quadruple failed verification: {0}")]
    VerificationFailure(String),
    #[error("no non-degenerate seed within {0} attempts")]
    RetriesExhausted(usize),
    #[error("scaling by zero is not invertible")]
    ZeroScalar,
    #[error("closed-form parameter combination is not integral")]
    NonIntegralFormula,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Pell(#[from] PellError),
}

impl BuildError {
    pub fn code(&self) -> &'static str {
        match self {
            BuildError::ZeroN => "zero_n",
            BuildError::SClassNoQuadruple(_, _) => "s_class_no_quadruple",
            BuildError::UncoveredClass(_, _) => "uncovered_class",
            BuildError::MissingAux(_) => "missing_aux",
            BuildError::SeedNormMismatch { .. } => "seed_norm_mismatch",
            BuildError::SeedFormViolation(_) => "seed_form_violation",
            BuildError::ParityFailure => "parity_failure",
            BuildError::Degenerate => "degenerate",
            BuildError::VerificationFailure(_) => "verification_failure",
            BuildError::RetriesExhausted(_) => "retries_exhausted",
            BuildError::ZeroScalar => "zero_scalar",
            BuildError::NonIntegralFormula => "non_integral_formula",
            BuildError::Ring(e) => e.code(),
            BuildError::Pell(e) => e.code(),
        }
    }
}

/// The five covered residue classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
}

impl CaseId {
    pub fn as_u8(self) -> u8 {
        match self {
            CaseId::Case1 => 1,
            CaseId::Case2 => 2,
            CaseId::Case3 => 3,
            CaseId::Case4 => 4,
            CaseId::Case5 => 5,
        }
    }
}

impl Serialize for CaseId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

/// Case covering a residue class, if any.
pub fn case_for(tag: &ClassTag) -> Option<CaseId> {
    match tag.offsets() {
        (1, 0) => Some(CaseId::Case1),
        (1, 2) => Some(CaseId::Case2),
        (3, 0) => Some(CaseId::Case3),
        (3, 2) => Some(CaseId::Case4),
        (2, 2) => Some(CaseId::Case5),
        _ => None,
    }
}

/// A factorization `3n = α₁·α₂` together with the seed norm it demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub alpha1: RingElt,
    pub alpha2: RingElt,
    pub required_seed_norm: i8,
    pub case_id: CaseId,
}

/// Auxiliary elements feeding the factorizations: a norm `−1` element for
/// cases 1–2, a norm `+6` element for case 5, both sign-normalized.
#[derive(Debug, Clone, Default)]
pub struct AuxElements {
    pub norm_minus_one: Option<RingElt>,
    pub norm_six: Option<RingElt>,
}

impl AuxElements {
    /// Deterministic defaults: the smallest-|y| element of each norm,
    /// sign-normalized (`im ≡ 1 (mod 6)` for the unit, `(12M+4, 6N+1)`
    /// shape for the norm-6 element).
    pub fn for_ctx(ctx: &RingCtx) -> AuxElements {
        let norm_minus_one = pell::enumerate_norm(ctx, -1, 1)
            .ok()
            .and_then(|v| v.into_iter().next())
            .and_then(|u| normalize_unit_minus(&u));
        let norm_six = pell::enumerate_norm(ctx, 6, 1)
            .ok()
            .and_then(|v| v.into_iter().next())
            .and_then(|v| normalize_norm_six(&v));
        AuxElements {
            norm_minus_one,
            norm_six,
        }
    }
}

/// Normalize a norm `+1` seed to `re ≡ 1 (mod 6)` (negating maps the
/// `6a₁−1` branch onto `6a₁+1`).
pub fn normalize_unit_plus(a: &RingElt) -> Option<RingElt> {
    match u8::try_from(&a.re.mod_floor(&BigInt::from(6))) {
        Ok(1) => Some(a.clone()),
        Ok(5) => Some(-a),
        _ => None,
    }
}

/// Normalize a norm `−1` element to `im ≡ 1 (mod 6)`; `re ≡ 3 (mod 6)`
/// holds automatically.
pub fn normalize_unit_minus(a: &RingElt) -> Option<RingElt> {
    match u8::try_from(&a.im.mod_floor(&BigInt::from(6))) {
        Ok(1) => Some(a.clone()),
        Ok(5) => Some(-a),
        _ => None,
    }
}

/// Adjust a norm `+6` solution to the shape `(12M+4, 6N+1)`. Component
/// signs flip independently: if `(x, y)` solves the equation so do
/// `(±x, ±y)`.
pub fn normalize_norm_six(v: &RingElt) -> Option<RingElt> {
    let re = match u8::try_from(&v.re.mod_floor(&BigInt::from(12))) {
        Ok(4) => v.re.clone(),
        Ok(8) => -&v.re,
        _ => return None,
    };
    let im = match u8::try_from(&v.im.mod_floor(&BigInt::from(6))) {
        Ok(1) => v.im.clone(),
        Ok(5) => -&v.im,
        _ => return None,
    };
    Some(RingElt { re, im })
}

/// Choose the factorization of `3n` for the class of `n`.
pub fn pick_factorization(
    ctx: &RingCtx,
    tag: &ClassTag,
    aux: &AuxElements,
) -> Result<Factorization, BuildError> {
    let n = tag.reconstruct();
    if n.is_zero() {
        return Err(BuildError::ZeroN);
    }
    if tag.family() == Family::S {
        return Err(BuildError::SClassNoQuadruple(tag.re_offset, tag.im_offset));
    }
    let case = case_for(tag).ok_or(BuildError::UncoveredClass(tag.re_offset, tag.im_offset))?;
    let fact = match case {
        CaseId::Case1 | CaseId::Case2 => {
            let u = aux
                .norm_minus_one
                .as_ref()
                .ok_or(BuildError::MissingAux(-1))?;
            Factorization {
                alpha1: u.conj().scaled(-3),
                alpha2: ctx.mul(u, &n),
                required_seed_norm: if case == CaseId::Case1 { 1 } else { -1 },
                case_id: case,
            }
        }
        CaseId::Case3 | CaseId::Case4 => Factorization {
            alpha1: RingElt::new(3, 0),
            alpha2: n.clone(),
            required_seed_norm: if case == CaseId::Case3 { 1 } else { -1 },
            case_id: case,
        },
        CaseId::Case5 => {
            let v = aux.norm_six.as_ref().ok_or(BuildError::MissingAux(6))?;
            let half = RingElt {
                re: 2 * &tag.m + 1,
                im: 2 * &tag.k + 1,
            };
            Factorization {
                alpha1: v.conj(),
                alpha2: ctx.mul(v, &half),
                required_seed_norm: if tag.m.is_even() { 1 } else { -1 },
                case_id: case,
            }
        }
    };
    debug_assert_eq!(ctx.mul(&fact.alpha1, &fact.alpha2), n.scaled(3));
    Ok(fact)
}

/// A verified D(n) quadruple with its construction data and the six root
/// certificates, in [`PAIRS`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadruple {
    pub d: BigInt,
    pub n: RingElt,
    pub elements: [RingElt; 4],
    pub seed: RingElt,
    pub seed_index: Option<usize>,
    pub case_id: CaseId,
    pub r: RingElt,
    pub roots: [RingElt; 6],
}

impl Serialize for Quadruple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Quadruple", 8)?;
        st.serialize_field("d", &self.d.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("seed_index", &self.seed_index)?;
        st.serialize_field("case_id", &self.case_id)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("roots", &self.roots)?;
        st.end()
    }
}

fn half_exact(x: &RingElt) -> Result<RingElt, BuildError> {
    if x.re.is_even() && x.im.is_even() {
        Ok(RingElt {
            re: &x.re / 2,
            im: &x.im / 2,
        })
    } else {
        Err(BuildError::ParityFailure)
    }
}

/// Assemble and fully verify the quadruple for a given factorization and
/// seed `a` of the required norm.
///
/// `s = (α₁+α₂)/2` is `a + 2r`, so `r = (s − a)/2`; `b = (r² − n)/a` is
/// exact because `Nm(a) = ±1`, realized as `(r² − n)·conj(a)·Nm(a)`.
/// Degenerate output (a zero or repeated element) is reported for the
/// caller to advance the seed. All six pair conditions are re-proved with
/// ring square roots even though three hold by construction.
pub fn assemble(
    ctx: &RingCtx,
    n: &RingElt,
    fact: &Factorization,
    a: &RingElt,
) -> Result<Quadruple, BuildError> {
    if n.is_zero() {
        return Err(BuildError::ZeroN);
    }
    let a_norm = ctx.norm(a);
    if a_norm != BigInt::from(fact.required_seed_norm) {
        return Err(BuildError::SeedNormMismatch {
            required: fact.required_seed_norm,
            found: a_norm,
        });
    }
    let s = half_exact(&(&fact.alpha1 + &fact.alpha2))?;
    let r = half_exact(&(&s - a))?;
    let r2_minus_n = &ctx.square(&r) - n;
    let b = if fact.required_seed_norm == 1 {
        ctx.mul(&r2_minus_n, &a.conj())
    } else {
        -&ctx.mul(&r2_minus_n, &a.conj())
    };
    let elements = [
        a.clone(),
        b.clone(),
        &(a + &b) + &r.scaled(2),
        &(a + &b.scaled(4)) + &r.scaled(4),
    ];
    for e in &elements {
        if e.is_zero() {
            return Err(BuildError::Degenerate);
        }
    }
    for (i, j) in PAIRS {
        if elements[i] == elements[j] {
            return Err(BuildError::Degenerate);
        }
    }

    // (a + 2r)² − 3n = α² with α = (α₁ − α₂)/2; guaranteed by algebra.
    let alpha = half_exact(&(&fact.alpha1 - &fact.alpha2))?;
    assert_eq!(
        &ctx.square(&s) - &n.scaled(3),
        ctx.square(&alpha),
        "factorization identity broke for n = {n}"
    );

    let mut roots: Vec<RingElt> = Vec::with_capacity(6);
    for (i, j) in PAIRS {
        let value = &ctx.mul(&elements[i], &elements[j]) + n;
        match ctx.sqrt(&value) {
            Some(root) => roots.push(root),
            None => {
                return Err(BuildError::VerificationFailure(format!(
                    "pair ({i}, {j}): {value} is not a square"
                )))
            }
        }
    }

    Ok(Quadruple {
        d: ctx.d().clone(),
        n: n.clone(),
        elements,
        seed: a.clone(),
        seed_index: None,
        case_id: fact.case_id,
        r,
        roots: roots.try_into().expect("six pairs"),
    })
}

/// Closed-form parameters, extracted from the same normalized elements the
/// engine consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseParams {
    /// Cases 1–2: auxiliary `u = (2·alpha + 1, 2·beta + 1)`, seed
    /// `(6·a1 + 1, 6·b1)` resp. `(6·a1 + 3, 6·b1 + 1)`.
    WithUnitAux {
        m: BigInt,
        k: BigInt,
        alpha: BigInt,
        beta: BigInt,
        a1: BigInt,
        b1: BigInt,
    },
    /// Cases 3–4: no auxiliary.
    Plain {
        m: BigInt,
        k: BigInt,
        a1: BigInt,
        b1: BigInt,
    },
    /// Case 5: auxiliary `v = (12·m6 + 4, 6·n6 + 1)`.
    WithSixAux {
        m: BigInt,
        k: BigInt,
        m6: BigInt,
        n6: BigInt,
        a1: BigInt,
        b1: BigInt,
    },
}

/// Pull closed-form parameters out of the normalized aux element and seed.
pub fn extract_params(
    case: CaseId,
    tag: &ClassTag,
    aux: &AuxElements,
    seed: &RingElt,
) -> Result<CaseParams, BuildError> {
    let (m, k) = (tag.m.clone(), tag.k.clone());
    let seed_plus =
        matches!(case, CaseId::Case1 | CaseId::Case3) || (case == CaseId::Case5 && tag.m.is_even());
    let (a1, b1) = if seed_plus {
        let one = BigInt::from(1);
        if seed.re.mod_floor(&BigInt::from(6)) != one
            || !seed.im.mod_floor(&BigInt::from(6)).is_zero()
        {
            return Err(BuildError::SeedFormViolation(seed.clone()));
        }
        ((&seed.re - 1) / 6, &seed.im / 6)
    } else {
        if seed.re.mod_floor(&BigInt::from(6)) != BigInt::from(3)
            || seed.im.mod_floor(&BigInt::from(6)) != BigInt::from(1)
        {
            return Err(BuildError::SeedFormViolation(seed.clone()));
        }
        ((&seed.re - 3) / 6, (&seed.im - 1) / 6)
    };
    match case {
        CaseId::Case1 | CaseId::Case2 => {
            let u = aux
                .norm_minus_one
                .as_ref()
                .ok_or(BuildError::MissingAux(-1))?;
            if u.re.is_even() || u.im.is_even() {
                return Err(BuildError::SeedFormViolation(u.clone()));
            }
            Ok(CaseParams::WithUnitAux {
                m,
                k,
                alpha: (&u.re - 1) / 2,
                beta: (&u.im - 1) / 2,
                a1,
                b1,
            })
        }
        CaseId::Case3 | CaseId::Case4 => Ok(CaseParams::Plain { m, k, a1, b1 }),
        CaseId::Case5 => {
            let v = aux.norm_six.as_ref().ok_or(BuildError::MissingAux(6))?;
            if v.re.mod_floor(&BigInt::from(12)) != BigInt::from(4)
                || v.im.mod_floor(&BigInt::from(6)) != BigInt::from(1)
            {
                return Err(BuildError::SeedFormViolation(v.clone()));
            }
            Ok(CaseParams::WithSixAux {
                m,
                k,
                m6: (&v.re - 4) / 12,
                n6: (&v.im - 1) / 6,
                a1,
                b1,
            })
        }
    }
}

/// The printed polynomial forms of `(r, b)` for each case; an independent
/// route to the engine's output. All interior divisions must be exact,
/// otherwise the parameters were normalized wrongly.
pub fn closed_form(
    ctx: &RingCtx,
    case: CaseId,
    params: &CaseParams,
) -> Result<(RingElt, RingElt), BuildError> {
    let d = ctx.d();
    let exact_half = |v: BigInt| -> Result<BigInt, BuildError> {
        if v.is_even() {
            Ok(v / 2)
        } else {
            Err(BuildError::NonIntegralFormula)
        }
    };
    let d_half = exact_half(d.clone())?;
    let (n, r, conj_factor) = match (case, params) {
        (
            CaseId::Case1,
            CaseParams::WithUnitAux {
                m,
                k,
                alpha,
                beta,
                a1,
                b1,
            },
        ) => {
            let n = RingElt {
                re: 4 * m + 1,
                im: 4 * k,
            };
            let r = RingElt {
                re: m * (2 * alpha + 1) + k * d * (2 * beta + 1) - alpha - 1 - 3 * a1,
                im: m * (2 * beta + 1) + k * (2 * alpha + 1) + 2 * beta + 1 - 3 * b1,
            };
            (
                n,
                r,
                RingElt {
                    re: 6 * a1 + 1,
                    im: b1 * -6,
                },
            )
        }
        (
            CaseId::Case2,
            CaseParams::WithUnitAux {
                m,
                k,
                alpha,
                beta,
                a1,
                b1,
            },
        ) => {
            let n = RingElt {
                re: 4 * m + 1,
                im: 4 * k + 2,
            };
            let r = RingElt {
                re: 2 * m * alpha - alpha + m - 2 - 3 * a1
                    + &d_half * (4 * beta * k + 2 * beta + 2 * k + 1),
                im: 2 * alpha * k + alpha + k + 1 - 3 * b1 + 2 * m * beta + 2 * beta + m,
            };
            (
                n,
                r,
                RingElt {
                    re: a1 * -6 - 3,
                    im: 6 * b1 + 1,
                },
            )
        }
        (CaseId::Case3, CaseParams::Plain { m, k, a1, b1 }) => {
            let n = RingElt {
                re: 4 * m + 3,
                im: 4 * k,
            };
            let r = RingElt {
                re: m + 1 - 3 * a1,
                im: k - 3 * b1,
            };
            (
                n,
                r,
                RingElt {
                    re: 6 * a1 + 1,
                    im: b1 * -6,
                },
            )
        }
        (CaseId::Case4, CaseParams::Plain { m, k, a1, b1 }) => {
            let n = RingElt {
                re: 4 * m + 3,
                im: 4 * k + 2,
            };
            let r = RingElt {
                re: m - 3 * a1,
                im: k - 3 * b1,
            };
            (
                n,
                r,
                RingElt {
                    re: a1 * -6 - 3,
                    im: 6 * b1 + 1,
                },
            )
        }
        (
            CaseId::Case5,
            CaseParams::WithSixAux {
                m,
                k,
                m6,
                n6,
                a1,
                b1,
            },
        ) => {
            let n = RingElt {
                re: 4 * m + 2,
                im: 4 * k + 2,
            };
            let common_re = 6 * m6 * m + 6 * m6 + 2 * m + 2 + &d_half * (6 * n6 * k + 3 * n6 + k);
            let common_im = 6 * m6 * k + 3 * m6 + 2 * k + 1 + 3 * n6 * m;
            if m.is_even() {
                let r = RingElt {
                    re: common_re + exact_half(&d_half - 1)? - 3 * a1,
                    im: common_im + exact_half(m.clone())? - 3 * b1,
                };
                (
                    n,
                    r,
                    RingElt {
                        re: 6 * a1 + 1,
                        im: b1 * -6,
                    },
                )
            } else {
                let r = RingElt {
                    re: common_re + exact_half(&d_half - 3)? - 3 * a1,
                    im: common_im + exact_half(m - 1)? - 3 * b1,
                };
                (
                    n,
                    r,
                    RingElt {
                        re: a1 * -6 - 3,
                        im: 6 * b1 + 1,
                    },
                )
            }
        }
        _ => return Err(BuildError::NonIntegralFormula),
    };
    // b = (r.re² + d·r.im² − n.re, 2·r.re·r.im − n.im) × factor
    let lead = RingElt {
        re: &r.re * &r.re + d * &r.im * &r.im - &n.re,
        im: 2 * &r.re * &r.im - &n.im,
    };
    let b = ctx.mul(&lead, &conj_factor);
    Ok((r, b))
}

/// Deterministic construction: walk the seed stream from `seed_index`,
/// skipping degenerate seeds up to [`RETRY_CAP`] attempts, and return the
/// first verified quadruple. The class `(4m, 4k)` routes through a scaled
/// quadruple for `n/4` when `n/4` itself lies in a covered class.
pub fn construct(ctx: &RingCtx, n: &RingElt, seed_index: usize) -> Result<Quadruple, BuildError> {
    if n.is_zero() {
        return Err(BuildError::ZeroN);
    }
    let tag = classify_mod4(n);
    if tag.family() == Family::S {
        return Err(BuildError::SClassNoQuadruple(tag.re_offset, tag.im_offset));
    }
    if tag.offsets() == (0, 0) {
        let quarter = RingElt {
            re: &n.re / 4,
            im: &n.im / 4,
        };
        let inner_tag = classify_mod4(&quarter);
        if inner_tag.family() == Family::S || case_for(&inner_tag).is_none() {
            return Err(BuildError::UncoveredClass(0, 0));
        }
        let q = construct(ctx, &quarter, seed_index)?;
        return scale_quadruple(ctx, &q, &RingElt::new(2, 0));
    }
    let aux = AuxElements::for_ctx(ctx);
    let fact = pick_factorization(ctx, &tag, &aux)?;
    let seeds = pell::enumerate_norm(
        ctx,
        i64::from(fact.required_seed_norm),
        seed_index + RETRY_CAP + 1,
    )?;
    let mut attempts = 0;
    for (idx, raw_seed) in seeds.iter().enumerate().skip(seed_index) {
        if attempts == RETRY_CAP {
            break;
        }
        attempts += 1;
        let normalized = if fact.required_seed_norm == 1 {
            normalize_unit_plus(raw_seed)
        } else {
            normalize_unit_minus(raw_seed)
        };
        let seed = normalized.ok_or_else(|| BuildError::SeedFormViolation(raw_seed.clone()))?;
        match assemble(ctx, n, &fact, &seed) {
            Ok(mut q) => {
                q.seed_index = Some(idx);
                return Ok(q);
            }
            Err(BuildError::Degenerate) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(BuildError::RetriesExhausted(attempts))
}

fn canonical_root(root: RingElt) -> RingElt {
    if root.re.is_negative() || (root.re.is_zero() && root.im.is_negative()) {
        -&root
    } else {
        root
    }
}

/// Scale a quadruple by `w ≠ 0`: elements pick up `w`, `n` picks up `w²`,
/// roots pick up `w` (re-canonicalized), and the result is re-verified.
pub fn scale_quadruple(ctx: &RingCtx, q: &Quadruple, w: &RingElt) -> Result<Quadruple, BuildError> {
    ctx.check_same_ring(&q.d)?;
    if w.is_zero() {
        return Err(BuildError::ZeroScalar);
    }
    let n = ctx.mul(&ctx.square(w), &q.n);
    let scaled = Quadruple {
        d: q.d.clone(),
        n: n.clone(),
        elements: [
            ctx.mul(&q.elements[0], w),
            ctx.mul(&q.elements[1], w),
            ctx.mul(&q.elements[2], w),
            ctx.mul(&q.elements[3], w),
        ],
        seed: ctx.mul(&q.seed, w),
        seed_index: q.seed_index,
        case_id: q.case_id,
        r: ctx.mul(&q.r, w),
        roots: q
            .roots
            .clone()
            .map(|root| canonical_root(ctx.mul(&root, w))),
    };
    let report = verify(ctx, &scaled.n, &scaled.elements)?;
    if !report.ok() {
        return Err(BuildError::VerificationFailure(
            "scaled quadruple failed re-verification".into(),
        ));
    }
    Ok(scaled)
}

/// Result of checking one pair product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    /// `elements[i]·elements[j] + n`.
    pub value: RingElt,
    /// Canonical root when the value is a square.
    pub root: Option<RingElt>,
}

/// Full verification report; failures are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub nonzero_ok: bool,
    pub distinct_ok: bool,
    pub pairs: [PairCheck; 6],
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.nonzero_ok && self.distinct_ok && self.pairs.iter().all(|p| p.root.is_some())
    }

    pub fn failing_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter(|p| p.root.is_none())
            .map(|p| (p.i, p.j))
            .collect()
    }
}

/// Check the defining property for four candidate elements: every pair
/// product shifted by `n` must be a ring square.
pub fn verify(
    ctx: &RingCtx,
    n: &RingElt,
    elems: &[RingElt; 4],
) -> Result<VerifyReport, BuildError> {
    if n.is_zero() {
        return Err(BuildError::ZeroN);
    }
    let nonzero_ok = elems.iter().all(|e| !e.is_zero());
    let distinct_ok = PAIRS.iter().all(|&(i, j)| elems[i] != elems[j]);
    let pairs = PAIRS.map(|(i, j)| {
        let value = &ctx.mul(&elems[i], &elems[j]) + n;
        let root = ctx.sqrt(&value);
        PairCheck { i, j, value, root }
    });
    Ok(VerifyReport {
        nonzero_ok,
        distinct_ok,
        pairs,
    })
}
