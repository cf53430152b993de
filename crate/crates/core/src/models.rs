//! Constructors for the model complexes: the unknot, torus-knot
//! staircases, acyclic boxes, thin-knot models, and the minimal cable
//! model for the `(n,1)`-cable of the trefoil.

use crate::alexander;
use crate::complex::{Complex, Generator};
use crate::error::{Error, Result};

/// One generator at bidegree (0,0) in grading 0 with zero differential;
/// the tensor identity.
pub fn unknot() -> Complex {
    Complex::from_data("unknot", vec![Generator::new("u", 0, 0, 0)], &[])
        .expect("unknot data is well-formed")
}

/// Staircase complex from a strictly descending, symmetric exponent
/// sequence of odd length (the alternating exponents of an L-space knot
/// Alexander polynomial).
///
/// Generators `v_0 .. v_{2m}` zigzag from `(0, alpha_0)`: odd steps move
/// right by the exponent gap, even steps move down. Odd-index generators
/// carry grading 1 and differential onto their two neighbours; even-index
/// generators carry grading 0.
pub fn staircase_from_exponents(alpha: &[i64]) -> Result<Complex> {
    if alpha.is_empty() || alpha.len() % 2 == 0 {
        return Err(Error::InvalidInput(
            "staircase exponents must have odd length".into(),
        ));
    }
    if !alpha.windows(2).all(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput(
            "staircase exponents must be strictly descending".into(),
        ));
    }
    let len = alpha.len();
    for k in 0..len {
        if alpha[k] != -alpha[len - 1 - k] {
            return Err(Error::InvalidInput(
                "staircase exponents must be symmetric about 0".into(),
            ));
        }
    }
    let mut generators = Vec::with_capacity(len);
    let mut entries = Vec::new();
    let (mut alg, mut alex) = (0i64, alpha[0]);
    generators.push(Generator::new("v_0", alg, alex, 0));
    for i in 1..len {
        let step = alpha[i - 1] - alpha[i];
        if i % 2 == 1 {
            alg += step;
        } else {
            alex -= step;
        }
        let maslov = i64::from(i % 2 == 1);
        generators.push(Generator::new(format!("v_{i}"), alg, alex, maslov));
        if i % 2 == 1 {
            entries.push((format!("v_{i}"), format!("v_{}", i - 1), 0));
        } else {
            entries.push((format!("v_{}", i - 1), format!("v_{i}"), 0));
        }
    }
    Complex::from_data(format!("staircase{alpha:?}"), generators, &entries)
}

/// Staircase of the `(p,q)`-torus knot, read off from the alternating
/// exponents of its Alexander polynomial. `q = 1` yields the unknot.
pub fn torus_staircase(p: i64, q: i64) -> Result<Complex> {
    let delta = alexander::torus_delta(p, q)?;
    let mut exponents = Vec::new();
    let mut expected_sign = 1i64;
    // terms come exponent-ascending; walk them descending and check the
    // alternating unit pattern that characterizes L-space knots
    for (e, c) in delta.terms().collect::<Vec<_>>().into_iter().rev() {
        let c: i64 = c.try_into().map_err(|_| {
            Error::Computation("torus Alexander coefficient out of range".into())
        })?;
        if c != expected_sign {
            return Err(Error::Computation(
                "torus Alexander polynomial is not alternating".into(),
            ));
        }
        exponents.push(e);
        expected_sign = -expected_sign;
    }
    Ok(staircase_from_exponents(&exponents)?.with_name(format!("torus({p},{q})")))
}

/// Four-generator acyclic square: the minimal acyclic summand. `tr` sits
/// at `(shift_i + 1, shift_j + 1)` with the given top grading and maps to
/// both `tl` and `br`, which map to `bl`.
pub fn box_complex(shift_i: i64, shift_j: i64, top_maslov: i64) -> Complex {
    let generators = vec![
        Generator::new("tr", shift_i + 1, shift_j + 1, top_maslov),
        Generator::new("tl", shift_i, shift_j + 1, top_maslov - 1),
        Generator::new("br", shift_i + 1, shift_j, top_maslov - 1),
        Generator::new("bl", shift_i, shift_j, top_maslov - 2),
    ];
    let entries = vec![
        ("tr".to_string(), "tl".to_string(), 0),
        ("tr".to_string(), "br".to_string(), 0),
        ("tl".to_string(), "bl".to_string(), 0),
        ("br".to_string(), "bl".to_string(), 0),
    ];
    Complex::from_data(
        format!("box({shift_i},{shift_j},{top_maslov})"),
        generators,
        &entries,
    )
    .expect("box data is well-formed")
}

/// Model for a thin knot of the given tau: the `(2, 2|tau|+1)` torus
/// staircase, dualized for negative tau, the unknot for tau = 0.
pub fn thin_model(tau_value: i64) -> Complex {
    if tau_value == 0 {
        return unknot();
    }
    let c = torus_staircase(2, 2 * tau_value.abs() + 1)
        .expect("(2, odd) torus parameters are always coprime");
    if tau_value < 0 {
        c.dual()
    } else {
        c
    }
}

/// Configuration for the cable model: the cable parameter `n >= 2` and the
/// free GF(2) coefficient vector `a_1 .. a_{n-1}` of the arrow from `y'_1`
/// onto the `w` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableModelConfig {
    n: i64,
    a: Vec<bool>,
}

impl CableModelConfig {
    pub fn new(n: i64, a: Vec<bool>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "cable model requires n >= 2, got {n}"
            )));
        }
        if a.len() as i64 != n - 1 {
            return Err(Error::InvalidInput(format!(
                "cable model a-vector must have length n-1 = {}, got {}",
                n - 1,
                a.len()
            )));
        }
        Ok(Self { n, a })
    }

    /// The all-zero a-vector.
    pub fn zero(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "cable model requires n >= 2, got {n}"
            )));
        }
        Ok(Self {
            n,
            a: vec![false; (n - 1) as usize],
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn a(&self) -> &[bool] {
        &self.a
    }

    fn label(&self) -> String {
        let bits: String = self.a.iter().map(|&b| if b { '1' } else { '0' }).collect();
        format!("cable(n={},a={bits})", self.n)
    }
}

/// The minimal `6n-5` generator model complex for the `(n,1)`-cable of the
/// trefoil. The forced arrows are the vertical one from `x_n` to `y'_1`,
/// the horizontal one from `x_n` to `y_n`, the chains `x_k -> z_k`,
/// `x'_k -> y'_k`, `y_k -> w_k`, and the a-vector arrows from `x_n` onto
/// the `y_k` and from `y'_1` onto the matching `w_k`; everything else is
/// zero, which is consistent (`d^2` cancels in pairs over GF(2)).
pub fn cable_model(cfg: &CableModelConfig) -> Result<Complex> {
    let n = cfg.n;
    let top_y = format!("y_{n}");
    let top_x = format!("x_{n}");
    let mut generators = vec![
        Generator::new(top_y.clone(), 0, n, 0),
        Generator::new(top_x.clone(), 1, n, 1),
        Generator::new("y'_1", 1, 0, 0),
    ];
    for k in 2..=n {
        generators.push(Generator::new(format!("x'_{k}"), k, 1, 1));
        generators.push(Generator::new(format!("y'_{k}"), k, 0, 0));
    }
    for k in 2..n {
        generators.push(Generator::new(format!("x_{k}"), 1, k, 1));
        generators.push(Generator::new(format!("z_{k}"), 1, 1, 0));
    }
    for k in 1..n {
        generators.push(Generator::new(format!("y_{k}"), 0, k, 0));
        generators.push(Generator::new(format!("w_{k}"), 0, 0, -1));
    }

    let mut entries: Vec<(String, String, i64)> = Vec::new();
    entries.push((top_x.clone(), top_y.clone(), 0));
    entries.push((top_x.clone(), "y'_1".into(), 0));
    for (i, &ai) in cfg.a.iter().enumerate() {
        if ai {
            let k = i as i64 + 1;
            entries.push((top_x.clone(), format!("y_{k}"), 0));
            entries.push(("y'_1".into(), format!("w_{k}"), 0));
        }
    }
    for k in 2..n {
        entries.push((format!("x_{k}"), format!("z_{k}"), 0));
    }
    for k in 2..=n {
        entries.push((format!("x'_{k}"), format!("y'_{k}"), 0));
    }
    for k in 1..n {
        entries.push((format!("y_{k}"), format!("w_{k}"), 0));
    }

    let c = Complex::from_data(cfg.label(), generators, &entries)?;
    debug_assert!(c.validate().is_valid());
    Ok(c)
}
