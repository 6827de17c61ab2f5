use num_integer::Integer;

use super::IMat2;

/// Coset representatives of `Z^2 / A Z^2` for a nonsingular integer matrix.
///
/// The column lattice of `A` is brought to Hermite form
/// `[[h11, h12], [0, h22]]`, after which the box `0 <= v1 < h11`,
/// `0 <= v2 < h22` is a complete residue system. The result has exactly
/// `|det A|` entries, ordered by `(v2, v1)`.
pub fn coset_representatives(a: &IMat2) -> Vec<[i64; 2]> {
    let det = a.det();
    assert!(det != 0, "coset_representatives: singular matrix");
    let (h11, h22) = hermite_diagonal(a);
    debug_assert_eq!(h11 * h22, det.abs());
    let mut out = Vec::with_capacity(det.unsigned_abs() as usize);
    for v2 in 0..h22 {
        for v1 in 0..h11 {
            out.push([v1, v2]);
        }
    }
    out
}

/// Diagonal of the column Hermite form of `a`: the second-row entries of
/// the lattice vectors generate `h22 Z`, and `h11 h22 = |det a|`.
fn hermite_diagonal(a: &IMat2) -> (i64, i64) {
    let m = a.0;
    let h22 = m[1][0].gcd(&m[1][1]);
    (a.det().abs() / h22, h22)
}
