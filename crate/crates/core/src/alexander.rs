//! Alexander polynomials of torus knots, satellites and Whitehead
//! doubles, plus the family reports used by the triviality arguments.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Symmetric Alexander polynomial of the `(p,q)`-torus knot,
/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` shifted to the symmetric
/// normalization. `q = 1` yields 1.
pub fn torus_delta(p: i64, q: i64) -> Result<LaurentPoly> {
    if p < 2 || q < 1 {
        return Err(Error::InvalidInput(format!(
            "torus parameters must satisfy p >= 2, q >= 1; got ({p},{q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!(
            "torus parameters must be coprime; got ({p},{q})"
        )));
    }
    let cyc = |k: i64| LaurentPoly::from_terms(&[(k, 1), (0, -1)]); // t^k - 1
    let num = cyc(p * q).mul(&cyc(1));
    let den = cyc(p).mul(&cyc(q));
    num.exact_divide(&den)?.symmetrize()
}

/// Satellite formula: the Alexander polynomial of a satellite with the
/// given pattern is the pattern polynomial times the companion polynomial
/// evaluated at `t^winding`.
pub fn satellite_delta(
    pattern_delta: &LaurentPoly,
    companion_delta: &LaurentPoly,
    winding: i64,
) -> Result<LaurentPoly> {
    if winding == 0 {
        return Err(Error::InvalidInput(
            "satellite formula requires nonzero winding number".into(),
        ));
    }
    pattern_delta
        .mul(&companion_delta.compose_power(winding)?)
        .symmetrize()
}

/// Any untwisted Whitehead double has trivial Alexander polynomial.
pub fn whitehead_double_delta() -> LaurentPoly {
    LaurentPoly::one()
}

/// Knot families compared in the summand arguments. `D` denotes the
/// positively-clasped untwisted Whitehead double of the trefoil.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `{D_{n,n+1} # -T_{n,n+1}}`
    Hom,
    /// `{D_{n,2n-1} # -T_{n,2n-1}}`
    Oss,
    /// `{D_{2n-1,1}}`
    Kp,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "HOM" => Ok(Self::Hom),
            "OSS" => Ok(Self::Oss),
            "KP" => Ok(Self::Kp),
            other => Err(Error::InvalidInput(format!(
                "unknown family '{other}', expected HOM, OSS or KP"
            ))),
        }
    }
}

/// One row of a family report.
#[derive(Clone, Debug)]
pub struct FamilyDeltaRow {
    pub label: String,
    pub delta: LaurentPoly,
    pub trivial: bool,
}

/// Alexander polynomials of the family members for `n` in the given
/// range. Connected sum multiplies polynomials and mirroring preserves
/// the symmetric representative.
pub fn family_delta_report(family: Family, n_lo: i64, n_hi: i64) -> Result<Vec<FamilyDeltaRow>> {
    if n_lo < 2 {
        return Err(Error::InvalidInput(format!(
            "family index starts at n = 2, got {n_lo}"
        )));
    }
    let whitehead = whitehead_double_delta();
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        let (label, delta) = match family {
            Family::Hom => {
                let torus = torus_delta(n, n + 1)?;
                let cable = satellite_delta(&torus, &whitehead, n)?;
                (format!("D_{{{n},{}}}#-T_{{{n},{}}}", n + 1, n + 1), cable.mul(&torus).symmetrize()?)
            }
            Family::Oss => {
                let torus = torus_delta(n, 2 * n - 1)?;
                let cable = satellite_delta(&torus, &whitehead, n)?;
                (
                    format!("D_{{{n},{}}}#-T_{{{n},{}}}", 2 * n - 1, 2 * n - 1),
                    cable.mul(&torus).symmetrize()?,
                )
            }
            Family::Kp => {
                let p = 2 * n - 1;
                // (p,1)-cable: unknotted pattern, winding p
                let delta = satellite_delta(&LaurentPoly::one(), &whitehead, p)?;
                (format!("D_{{{p},1}}"), delta)
            }
        };
        let trivial = delta.is_trivial()?;
        rows.push(FamilyDeltaRow {
            label,
            delta,
            trivial,
        });
    }
    Ok(rows)
}
