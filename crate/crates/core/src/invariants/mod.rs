//! Concordance invariants of bifiltered complexes: tau, Upsilon
//! (pointwise and as an exact piecewise-linear function), the `V_k`
//! family, `nu+`, derived surgery correction terms, and the
//! `nu+`-equivalence predicate.
//!
//! All computations happen in finite graded pieces. The grading-0
//! homology class of a knot-like complex is represented by a cycle `z0`;
//! its full set of representatives is the affine space `z0 + B0` over the
//! boundary space `B0`, and every invariant here is a scan or an envelope
//! over that space.

mod pl;

pub use pl::{upper_envelope, Line, PlFunction};

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::complex::{Complex, GradedBasis};
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVec};
use crate::Rational;

/// Default cap on the exact-mode representative enumeration: at most
/// `2^20` representatives.
pub const DEFAULT_ENUMERATION_CAP_LOG2: u32 = 20;

/// How to compute the Upsilon function.
#[derive(Clone, Copy, Debug)]
pub enum UpsilonMode {
    /// Enumerate every cycle representative of the grading-0 class and
    /// take the exact lower envelope; fails with a computation-cap error
    /// when the boundary space has dimension above `cap_log2`.
    Exact { cap_log2: u32 },
    /// Evaluate pointwise on the grid `t = 2a/qmax` with Farey mediant
    /// refinement near slope changes; result is marked unverified.
    Sampled { qmax: u64 },
}

impl UpsilonMode {
    pub fn exact() -> Self {
        Self::Exact {
            cap_log2: DEFAULT_ENUMERATION_CAP_LOG2,
        }
    }
}

fn require_knotlike(c: &Complex) -> Result<()> {
    if c.is_knotlike() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "complex '{}' is not knot-like",
            c.name()
        )))
    }
}

/// The grading-0 generator class of the full complex: the graded basis,
/// one representing cycle, and an independent basis of the boundary
/// space, all in grading-0 coordinates.
struct GradingZeroClass {
    basis: GradedBasis,
    cycle: BitVec,
    boundary_basis: Vec<BitVec>,
}

fn grading_zero_class(c: &Complex) -> Result<GradingZeroClass> {
    let basis = c.graded_basis(0);
    let below = c.graded_basis(-1);
    let above = c.graded_basis(1);
    let d_here = c.boundary_matrix(&basis, &below);
    let d_above = c.boundary_matrix(&above, &basis);
    let boundary_basis = gf2::column_space_basis(&d_above);
    let bmat = BitMatrix::from_columns(basis.monos.len(), &boundary_basis);
    let cycle = gf2::kernel_basis(&d_here)
        .into_iter()
        .find(|z| {
            gf2::solve_membership(&bmat, z)
                .expect("membership dimensions agree")
                .is_none()
        })
        .ok_or_else(|| {
            Error::Computation(format!(
                "complex '{}' has no generator class in grading 0",
                c.name()
            ))
        })?;
    Ok(GradingZeroClass {
        basis,
        cycle,
        boundary_basis,
    })
}

/// Minimal key `s` (over the finite candidate set of the keys present)
/// such that `target` lies in `span(units with key <= s) + span(boundaries)`.
/// The membership predicate is monotone in `s`, so a binary search over
/// the sorted candidates is exact.
fn minimal_reachable_key<K: Ord + Clone>(
    keys: &[K],
    target: &BitVec,
    boundary_basis: &[BitVec],
) -> Option<K> {
    let n = keys.len();
    let mut candidates: Vec<K> = keys.to_vec();
    candidates.sort();
    candidates.dedup();
    let member = |s: &K| -> bool {
        let mut cols = Vec::with_capacity(n + boundary_basis.len());
        for (i, key) in keys.iter().enumerate() {
            if key <= s {
                let mut v = BitVec::zeros(n);
                v.set(i, true);
                cols.push(v);
            }
        }
        cols.extend_from_slice(boundary_basis);
        let span = BitMatrix::from_columns(n, &cols);
        gf2::solve_membership(&span, target)
            .expect("membership dimensions agree")
            .is_some()
    };
    if candidates.is_empty() || !member(candidates.last().unwrap()) {
        return None;
    }
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if member(&candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(candidates[lo].clone())
}

/// tau: restrict to the `i = 0` slice, locate the generator class of its
/// grading-0 homology, and scan for the smallest Alexander level whose
/// subcomplex still carries a representative.
pub fn tau(c: &Complex) -> Result<i64> {
    require_knotlike(c)?;
    let slice = c.slice_complex();
    let here = slice.basis_at(0);
    let below = slice.basis_at(-1);
    let above = slice.basis_at(1);
    let d_here = slice.boundary_matrix(&here, &below);
    let d_above = slice.boundary_matrix(&above, &here);
    let boundary_basis = gf2::column_space_basis(&d_above);
    let bmat = BitMatrix::from_columns(here.len(), &boundary_basis);
    let cycle = gf2::kernel_basis(&d_here)
        .into_iter()
        .find(|z| {
            gf2::solve_membership(&bmat, z)
                .expect("membership dimensions agree")
                .is_none()
        })
        .ok_or_else(|| {
            Error::Computation(format!(
                "slice of '{}' has no generator class in grading 0",
                c.name()
            ))
        })?;
    let keys: Vec<i64> = here.iter().map(|&g| slice.alex_level[g]).collect();
    minimal_reachable_key(&keys, &cycle, &boundary_basis).ok_or_else(|| {
        Error::Computation("generator class escaped its own slice; complex is inconsistent".into())
    })
}

fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Level of a grading-0 monomial at parameter `t`: the line
/// `(1 - t/2) i + (t/2) j` through its effective bidegree.
fn level_line(c: &Complex, m: crate::complex::Monomial) -> Line {
    let (i, j) = c.eff(m);
    Line {
        slope: Rational::new((j - i).into(), 2.into()),
        intercept: rational(i),
    }
}

/// Exact Upsilon at one rational parameter in [0,2]: minus twice the
/// smallest level `s` such that the grading-0 class has a representative
/// supported at levels `<= s`. The optimum is attained at the level of
/// some grading-0 monomial, so the finite scan is complete.
pub fn upsilon_at(c: &Complex, t: &Rational) -> Result<Rational> {
    require_knotlike(c)?;
    if t < &Rational::zero() || t > &rational(2) {
        return Err(Error::InvalidInput(format!(
            "Upsilon parameter {t} outside [0,2]"
        )));
    }
    if t.is_zero() {
        return Ok(Rational::zero());
    }
    let class = grading_zero_class(c)?;
    let keys: Vec<Rational> = class
        .basis
        .monos
        .iter()
        .map(|&m| level_line(c, m).eval(t))
        .collect();
    let s = minimal_reachable_key(&keys, &class.cycle, &class.boundary_basis).ok_or_else(
        || Error::Computation("grading-0 class has no representative at any level".into()),
    )?;
    Ok(s * rational(-2))
}

/// The full Upsilon function on [0,2].
pub fn upsilon_pl(c: &Complex, mode: UpsilonMode) -> Result<PlFunction> {
    require_knotlike(c)?;
    match mode {
        UpsilonMode::Exact { cap_log2 } => upsilon_pl_exact(c, cap_log2),
        UpsilonMode::Sampled { qmax } => upsilon_pl_sampled(c, qmax),
    }
}

/// Exact mode: every representative `z0 + b` contributes the upper
/// envelope of its monomial level lines; Upsilon is minus twice the lower
/// envelope over all representatives. Representatives are walked with a
/// Gray code so each step toggles one boundary basis vector, and
/// representatives sharing the same set of level lines are folded once.
fn upsilon_pl_exact(c: &Complex, cap_log2: u32) -> Result<PlFunction> {
    let class = grading_zero_class(c)?;
    let dim = class.boundary_basis.len();
    if dim as u32 > cap_log2 {
        return Err(Error::ComputationCap(format!(
            "exact Upsilon needs 2^{dim} representatives, cap is 2^{cap_log2}"
        )));
    }
    let monos = &class.basis.monos;
    let mut lines: Vec<Line> = Vec::new();
    let mut line_index: HashMap<Line, usize> = HashMap::new();
    let mut mono_line: Vec<usize> = Vec::with_capacity(monos.len());
    for &m in monos {
        let line = level_line(c, m);
        let id = *line_index.entry(line.clone()).or_insert_with(|| {
            lines.push(line.clone());
            lines.len() - 1
        });
        mono_line.push(id);
    }

    let mut present = class.cycle.clone();
    let mut counts = vec![0u32; lines.len()];
    for i in present.ones() {
        counts[mono_line[i]] += 1;
    }
    // the envelope depends only on the set of present lines, so the walk
    // folds each line signature once; u128 signatures cover every complex
    // in scope and the Vec fallback keeps larger ones correct
    let min_level = if lines.len() <= 128 {
        enumerate_representatives(
            &class.boundary_basis,
            &mono_line,
            &lines,
            &mut present,
            &mut counts,
            |counts| {
                let mut sig = 0u128;
                for (i, &ct) in counts.iter().enumerate() {
                    if ct > 0 {
                        sig |= 1u128 << i;
                    }
                }
                sig
            },
        )
    } else {
        enumerate_representatives(
            &class.boundary_basis,
            &mono_line,
            &lines,
            &mut present,
            &mut counts,
            |counts| {
                let mut words = vec![0u64; counts.len().div_ceil(64)];
                for (i, &ct) in counts.iter().enumerate() {
                    if ct > 0 {
                        words[i / 64] |= 1u64 << (i % 64);
                    }
                }
                words
            },
        )
    };
    Ok(min_level.map_values(|v| v * rational(-2)))
}

/// Gray-code walk over all `2^dim` representatives `cycle + combination`,
/// folding the upper level envelope of each new line signature into a
/// running lower envelope.
fn enumerate_representatives<S: Eq + std::hash::Hash>(
    boundary_basis: &[BitVec],
    mono_line: &[usize],
    lines: &[Line],
    present: &mut BitVec,
    counts: &mut [u32],
    signature: impl Fn(&[u32]) -> S,
) -> PlFunction {
    let lo = Rational::zero();
    let hi = rational(2);
    let mut seen: HashSet<S> = HashSet::new();
    let mut envelope: Option<PlFunction> = None;
    let fold = |counts: &[u32], envelope: &mut Option<PlFunction>, seen: &mut HashSet<S>| {
        if !seen.insert(signature(counts)) {
            return;
        }
        let active: Vec<Line> = counts
            .iter()
            .enumerate()
            .filter(|&(_, &ct)| ct > 0)
            .map(|(i, _)| lines[i].clone())
            .collect();
        let env = upper_envelope(&active, &lo, &hi);
        *envelope = Some(match envelope.take() {
            None => env,
            Some(prev) => prev.min_with(&env),
        });
    };
    fold(counts, &mut envelope, &mut seen);
    for step in 1u64..(1u64 << boundary_basis.len()) {
        let bit = step.trailing_zeros() as usize;
        for idx in boundary_basis[bit].ones().collect::<Vec<_>>() {
            if present.get(idx) {
                present.set(idx, false);
                counts[mono_line[idx]] -= 1;
            } else {
                present.set(idx, true);
                counts[mono_line[idx]] += 1;
            }
        }
        fold(counts, &mut envelope, &mut seen);
    }
    envelope.expect("class has at least one representative")
}

fn mediant(a: &Rational, b: &Rational) -> Rational {
    Rational::new(a.numer() + b.numer(), a.denom() + b.denom())
}

fn upsilon_pl_sampled(c: &Complex, qmax: u64) -> Result<PlFunction> {
    if qmax < 2 {
        return Err(Error::InvalidInput("sampled mode needs qmax >= 2".into()));
    }
    let mut cache: BTreeMap<Rational, Rational> = BTreeMap::new();
    let value = |t: &Rational, cache: &mut BTreeMap<Rational, Rational>| -> Result<Rational> {
        if let Some(v) = cache.get(t) {
            return Ok(v.clone());
        }
        let v = upsilon_at(c, t)?;
        cache.insert(t.clone(), v.clone());
        Ok(v)
    };
    let mut ts: Vec<Rational> = (0..=qmax)
        .map(|a| Rational::new((2 * a).into(), qmax.into()))
        .collect();
    // refine around slope changes with Farey mediants
    for _pass in 0..2 {
        let mut values = Vec::with_capacity(ts.len());
        for t in &ts {
            values.push(value(t, &mut cache)?);
        }
        let mut extra = Vec::new();
        for i in 1..ts.len() - 1 {
            let left = (&values[i] - &values[i - 1]) / (&ts[i] - &ts[i - 1]);
            let right = (&values[i + 1] - &values[i]) / (&ts[i + 1] - &ts[i]);
            if left != right {
                extra.push(mediant(&ts[i - 1], &ts[i]));
                extra.push(mediant(&ts[i], &ts[i + 1]));
            }
        }
        if extra.is_empty() {
            break;
        }
        ts.extend(extra);
        ts.sort();
        ts.dedup();
    }
    let mut points = Vec::with_capacity(ts.len());
    for t in &ts {
        let v = value(t, &mut cache)?;
        points.push((t.clone(), v));
    }
    Ok(PlFunction::from_points(points, false))
}

/// Jump of the Upsilon derivative at an interior parameter: right slope
/// minus left slope of the exact function, zero inside a segment.
pub fn upsilon_jump(c: &Complex, t0: &Rational) -> Result<Rational> {
    if t0 <= &Rational::zero() || t0 >= &rational(2) {
        return Err(Error::InvalidInput(format!(
            "jump parameter {t0} outside (0,2)"
        )));
    }
    let pl = upsilon_pl(c, UpsilonMode::exact())?;
    Ok(pl.slope_jump_at(t0))
}

fn scan_window(c: &Complex) -> u64 {
    let gens = c.generators();
    let spread = |f: &dyn Fn(&crate::complex::Generator) -> i64| -> i64 {
        let lo = gens.iter().map(|g| f(g)).min().unwrap_or(0);
        let hi = gens.iter().map(|g| f(g)).max().unwrap_or(0);
        hi - lo
    };
    let alex = spread(&|g| g.alex);
    let alg = spread(&|g| g.alg);
    ((alex + alg) as u64 + gens.len() as u64).max(1)
}

/// True when some cycle of `C{i<=0, j<=k}` in grading `-2m` is nonzero in
/// the homology of the full complex, i.e. the tower class at depth `m` is
/// reachable from the restricted region.
fn tower_reaches(c: &Complex, k: i64, m: i64) -> bool {
    let grading = -2 * m;
    let sub = c.graded_basis_filtered(grading, |cx, mono| {
        let (i, j) = cx.eff(mono);
        i <= 0 && j <= k
    });
    if sub.monos.is_empty() {
        return false;
    }
    let below = c.graded_basis(grading - 1);
    let cycles = gf2::kernel_basis(&c.boundary_matrix(&sub, &below));
    if cycles.is_empty() {
        return false;
    }
    let full = c.graded_basis(grading);
    let embedded: Vec<BitVec> = cycles
        .iter()
        .map(|z| {
            let mut v = BitVec::zeros(full.monos.len());
            for i in z.ones() {
                v.set(full.index[&sub.monos[i]], true);
            }
            v
        })
        .collect();
    let above = c.graded_basis(grading + 1);
    let boundaries = c.boundary_matrix(&above, &full);
    gf2::rank_increases(
        &boundaries,
        &BitMatrix::from_columns(full.monos.len(), &embedded),
    )
}

/// `V_k`: the least `m >= 0` such that `U^m` times the tower class is
/// reachable from the region `{i <= 0, j <= k}`. The scan window starts
/// at the filtration spreads plus the generator count and doubles until
/// the answer stabilizes; a finitely generated knot-like complex always
/// stabilizes.
pub fn v_k(c: &Complex, k: i64) -> Result<i64> {
    require_knotlike(c)?;
    if k < 0 {
        return Err(Error::InvalidInput(format!("V_k needs k >= 0, got {k}")));
    }
    let mut window = scan_window(c);
    for _attempt in 0..3 {
        for m in 0..=window {
            if tower_reaches(c, k, m as i64) {
                return Ok(m as i64);
            }
        }
        window *= 2;
    }
    Err(Error::ComputationCap(
        "V_k scan window failed to stabilize after two doublings".into(),
    ))
}

/// `nu+`: the least `k >= 0` with `V_k = 0`; terminates because `V_k`
/// vanishes once `k` clears the Alexander spread.
pub fn nu_plus(c: &Complex) -> Result<i64> {
    require_knotlike(c)?;
    let mut window = scan_window(c);
    for _attempt in 0..3 {
        for k in 0..=window {
            if v_k(c, k as i64)? == 0 {
                return Ok(k as i64);
            }
        }
        window *= 2;
    }
    Err(Error::ComputationCap(
        "nu+ scan window failed to stabilize after two doublings".into(),
    ))
}

/// Correction term of +1-surgery: `-2 V_0`.
pub fn d_surgery_one(c: &Complex) -> Result<i64> {
    Ok(-2 * v_k(c, 0)?)
}

/// Half-grading correction term of 0-surgery: `1/2 + d(S^3_1)`.
pub fn d_half_zero_surgery(c: &Complex) -> Result<Rational> {
    Ok(Rational::new(1.into(), 2.into()) + rational(d_surgery_one(c)?))
}

/// Two complexes are nu+-equivalent when both connected-sum differences
/// (tensor with the dual of the other) have vanishing `V_0`.
pub fn nu_plus_equivalent(a: &Complex, b: &Complex) -> Result<bool> {
    require_knotlike(a)?;
    require_knotlike(b)?;
    Ok(v_k(&a.tensor(&b.dual()), 0)? == 0 && v_k(&a.dual().tensor(b), 0)? == 0)
}
