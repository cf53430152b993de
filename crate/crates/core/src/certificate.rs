//! Jump-homomorphism certificates: the vector of normalized Upsilon
//! derivative jumps at `t = 2/(1+k)`, jump matrices of knot families, and
//! the triangular-pattern check that certifies a free summand of the
//! given rank.

use num_traits::{One, Signed, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::invariants::{self, UpsilonMode};
use crate::Rational;

/// Rational jump matrix of a knot family: entry `(row, k)` is
/// `(1/(1+k)) * jump of Upsilon' at 2/(1+k)` for `k = 2..=k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpMatrix {
    pub labels: Vec<String>,
    pub k_max: i64,
    pub entries: Vec<Vec<Rational>>,
}

impl JumpMatrix {
    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.denom().is_one())
    }
}

/// Verdict of the summand certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandVerdict {
    /// Rank of the jump matrix over the rationals.
    pub rank: usize,
    /// Whether a triangular pattern with unit pivots certifies
    /// surjectivity onto a free group of that rank.
    pub certified: bool,
    /// 1-based pivot coordinates within the rows (coordinate `c`
    /// corresponds to `k = c + 1`), ascending.
    pub pivot_columns: Vec<usize>,
    /// Whether every matrix entry is an integer.
    pub integral: bool,
}

/// The normalized jump vector `phi` of one complex, indexed `k = 2..=k_max`.
pub fn phi_vector(c: &Complex, k_max: i64) -> Result<Vec<Rational>> {
    phi_vector_with_cap(c, k_max, invariants::DEFAULT_ENUMERATION_CAP_LOG2)
}

/// `phi_vector` with an explicit representative-enumeration cap, for
/// complexes (tensor products in particular) whose boundary space exceeds
/// the default.
pub fn phi_vector_with_cap(c: &Complex, k_max: i64, cap_log2: u32) -> Result<Vec<Rational>> {
    if k_max < 2 {
        return Err(Error::InvalidInput(format!(
            "phi vector needs k_max >= 2, got {k_max}"
        )));
    }
    let pl = invariants::upsilon_pl(c, UpsilonMode::Exact { cap_log2 })?;
    let mut out = Vec::with_capacity((k_max - 1) as usize);
    for k in 2..=k_max {
        let t0 = Rational::new(2.into(), (1 + k).into());
        let jump = pl.slope_jump_at(&t0);
        out.push(jump / Rational::from_integer((1 + k).into()));
    }
    Ok(out)
}

/// Stacks the phi vectors of a family into a jump matrix.
pub fn jump_matrix(family: &[(String, Complex)], k_max: i64) -> Result<JumpMatrix> {
    let mut labels = Vec::with_capacity(family.len());
    let mut entries = Vec::with_capacity(family.len());
    for (label, c) in family {
        labels.push(label.clone());
        entries.push(phi_vector(c, k_max)?);
    }
    Ok(JumpMatrix {
        labels,
        k_max,
        entries,
    })
}

fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        let pivot_val = pivot_row[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = &row[col] / &pivot_val;
                for (c, entry) in row.iter_mut().enumerate() {
                    *entry = &*entry - &factor * &pivot_row[c];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Checks the echelon pattern: each nonzero row must end in a unit entry
/// (its rightmost nonzero coordinate), and the matrix rank must equal the
/// number of distinct such pivot columns. Rows ordered by pivot column
/// then form a triangular system with unit diagonal, which is surjective
/// onto the free group of that rank; the verdict is invariant under row
/// reordering.
pub fn summand_certificate(m: &JumpMatrix) -> SummandVerdict {
    let rank = rational_rank(&m.entries);
    let mut pivots = std::collections::BTreeSet::new();
    let mut all_rows_pivoted = true;
    for row in &m.entries {
        let rightmost = row.iter().rposition(|e| !e.is_zero());
        match rightmost {
            Some(col) if row[col].abs().is_one() => {
                pivots.insert(col + 1); // 1-based coordinate
            }
            Some(_) => all_rows_pivoted = false,
            None => {} // zero rows carry no information either way
        }
    }
    let pivot_columns: Vec<usize> = pivots.into_iter().collect();
    let certified = rank > 0 && all_rows_pivoted && pivot_columns.len() == rank;
    SummandVerdict {
        rank,
        certified,
        pivot_columns,
        integral: m.is_integral(),
    }
}

/// Smallest `t > 0` at which the exact Upsilon function changes slope;
/// `None` when Upsilon has a single segment (in particular when it is
/// identically zero).
pub fn first_singularity(c: &Complex) -> Result<Option<Rational>> {
    let pl = invariants::upsilon_pl(c, UpsilonMode::exact())?;
    Ok(pl.first_interior_breakpoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{self, CableModelConfig};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn cable(n: i64) -> Complex {
        models::cable_model(&CableModelConfig::zero(n).unwrap()).unwrap()
    }

    fn cable_family(lo: i64, hi: i64) -> Vec<(String, Complex)> {
        (lo..=hi).map(|n| (format!("cable_n{n}"), cable(n))).collect()
    }

    #[test]
    fn phi_vector_cable4() {
        let phi = phi_vector(&cable(4), 6).unwrap();
        assert_eq!(
            phi,
            vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)]
        );
    }

    #[test]
    fn phi_vector_unknot_zero() {
        let phi = phi_vector(&models::unknot(), 8).unwrap();
        assert!(phi.iter().all(|e| e == &rat(0, 1)));
    }

    #[test]
    fn phi_vector_tensor_additivity() {
        let t = cable(2).tensor(&cable(3));
        // the tensor's boundary space has dimension 24, above the default cap
        assert!(phi_vector(&t, 4).is_err());
        let phi = phi_vector_with_cap(&t, 4, 24).unwrap();
        assert_eq!(phi, vec![rat(1, 1), rat(1, 1), rat(0, 1)]);
        let lhs = phi_vector(&cable(2), 4).unwrap();
        let rhs = phi_vector(&cable(3), 4).unwrap();
        let sum: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a + b).collect();
        assert_eq!(phi, sum);
    }

    #[test]
    fn phi_vector_negates_under_dual() {
        for n in 2..=3 {
            let c = cable(n);
            let phi = phi_vector(&c, 5).unwrap();
            let phi_dual = phi_vector(&c.dual(), 5).unwrap();
            let negated: Vec<Rational> = phi.iter().map(|e| -e).collect();
            assert_eq!(phi_dual, negated, "n={n}");
        }
    }

    #[test]
    fn phi_entry_robust_across_a_vectors() {
        for n in 2..=5i64 {
            for mask in 0..(1u32 << (n - 1)) {
                let a: Vec<bool> = (0..n - 1).map(|i| mask >> i & 1 == 1).collect();
                let c = models::cable_model(&CableModelConfig::new(n, a).unwrap()).unwrap();
                let phi = phi_vector(&c, n + 2).unwrap();
                // entry at k = n (coordinate n-1) is 1, later entries vanish
                assert_eq!(phi[(n - 2) as usize], rat(1, 1), "n={n}, mask={mask}");
                for k in (n + 1)..=(n + 2) {
                    assert_eq!(phi[(k - 2) as usize], rat(0, 1), "n={n}, k={k}");
                }
            }
        }
    }

    #[test]
    fn jump_matrix_is_identity_for_small_family() {
        let m = jump_matrix(&cable_family(2, 5), 5).unwrap();
        for (i, row) in m.entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let expected = if i == j { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(entry, &expected, "entry ({i},{j})");
            }
        }
        assert!(m.is_integral());
    }

    #[test]
    fn jump_matrix_unknot_row_is_zero() {
        let m = jump_matrix(&[("unknot".into(), models::unknot())], 5).unwrap();
        assert!(m.entries[0].iter().all(|e| e.is_zero()));
        let verdict = summand_certificate(&m);
        assert_eq!(verdict.rank, 0);
        assert!(!verdict.certified);
    }

    #[test]
    fn jump_matrix_duplicate_rows() {
        let fam = vec![
            ("a".to_string(), cable(2)),
            ("b".to_string(), cable(2)),
        ];
        let m = jump_matrix(&fam, 4).unwrap();
        assert_eq!(m.entries[0], m.entries[1]);
        let verdict = summand_certificate(&m);
        assert_eq!(verdict.rank, 1);
        assert!(verdict.certified);
        assert_eq!(verdict.pivot_columns, vec![1]);
    }

    #[test]
    fn certificate_full_family() {
        let m = jump_matrix(&cable_family(2, 10), 10).unwrap();
        let verdict = summand_certificate(&m);
        assert_eq!(verdict.rank, 9);
        assert!(verdict.certified);
        assert_eq!(verdict.pivot_columns, (1..=9).collect::<Vec<_>>());
        assert!(verdict.integral);
    }

    #[test]
    fn certificate_zero_matrix() {
        let m = JumpMatrix {
            labels: vec!["z".into()],
            k_max: 4,
            entries: vec![vec![rat(0, 1); 3]],
        };
        let verdict = summand_certificate(&m);
        assert_eq!(verdict.rank, 0);
        assert!(!verdict.certified);
        assert!(verdict.pivot_columns.is_empty());
    }

    #[test]
    fn certificate_repeated_unit_rows() {
        let m = JumpMatrix {
            labels: vec!["a".into(), "b".into()],
            k_max: 3,
            entries: vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]],
        };
        let verdict = summand_certificate(&m);
        assert_eq!(verdict.rank, 1);
        assert!(verdict.certified);
    }

    #[test]
    fn certificate_invariant_under_row_reordering() {
        let mut fam = cable_family(2, 5);
        let forward = summand_certificate(&jump_matrix(&fam, 6).unwrap());
        fam.reverse();
        let backward = summand_certificate(&jump_matrix(&fam, 6).unwrap());
        assert_eq!(forward.rank, backward.rank);
        assert_eq!(forward.certified, backward.certified);
        assert_eq!(forward.pivot_columns, backward.pivot_columns);
    }

    #[test]
    fn certificate_flags_non_unit_pivot() {
        let m = JumpMatrix {
            labels: vec!["half".into()],
            k_max: 3,
            entries: vec![vec![rat(0, 1), rat(1, 2)]],
        };
        let verdict = summand_certificate(&m);
        assert_eq!(verdict.rank, 1);
        assert!(!verdict.certified);
        assert!(!verdict.integral);
    }

    #[test]
    fn first_singularity_values() {
        assert_eq!(
            first_singularity(&cable(3)).unwrap(),
            Some(rat(1, 2))
        );
        for n in 2..=6 {
            assert_eq!(
                first_singularity(&cable(n)).unwrap(),
                Some(rat(2, 1 + n)),
                "n={n}"
            );
        }
        assert_eq!(
            first_singularity(&models::torus_staircase(2, 5).unwrap()).unwrap(),
            Some(rat(1, 1))
        );
        assert_eq!(first_singularity(&models::unknot()).unwrap(), None);
    }

    #[test]
    fn rational_rank_basics() {
        assert_eq!(rational_rank(&[vec![rat(0, 1), rat(0, 1)]]), 0);
        assert_eq!(
            rational_rank(&[
                vec![rat(1, 2), rat(1, 1)],
                vec![rat(1, 1), rat(2, 1)],
                vec![rat(0, 1), rat(1, 3)],
            ]),
            2
        );
    }
}
