//! Reflection and translation operators on the torus: involution,
//! orthogonality, completeness and the three-reflection rule.

use scarlab::quantum::{reflection, translation, TorusOperator, TorusSpace, C64};

fn main() -> scarlab::Result<()> {
    let n = 5;
    let s = TorusSpace::new(n)?;
    let r = reflection(&s, 1, 3);
    println!("R Hermitian residual {:.1e}", r.hermiticity_residual());
    println!("R^2 - 1: {:.1e}", (&r * &r).max_abs_diff(&TorusOperator::identity(n)));
    println!("Tr R = {:.3}", r.trace());
    println!("Tr[R(1,3) R(2,0)] = {:.3}", (&r * &reflection(&s, 2, 0)).trace());

    let mut sum = TorusOperator::identity(n).scale(C64::new(0.0, 0.0));
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            sum = TorusOperator::from_matrix(sum.matrix() + reflection(&s, a, b).matrix());
        }
    }
    let completeness = sum.scale(C64::new(1.0 / n as f64, 0.0)).max_abs_diff(&TorusOperator::identity(n));
    println!("(1/N) sum R - 1: {completeness:.1e}");

    // R_x2 R_x R_x1 is a phase times R_{x2 - x + x1}
    let prod = &(&reflection(&s, 1, 2) * &reflection(&s, 4, 0)) * &reflection(&s, 3, 3);
    let target = reflection(&s, 0, 0);
    println!("|Tr[P^dagger R]| = {:.6} (N = {n})", (&prod.adjoint() * &target).trace().norm());

    let t = &translation(&s, 1, 2) * &translation(&s, 3, 1);
    println!("T(1,2) T(3,1) vs phase T(4,3): {:.1e}",
        t.max_abs_diff(&translation(&s, 4, 3).scale(C64::from_polar(1.0, std::f64::consts::PI * (1 - 6) as f64 / n as f64))));
    Ok(())
}
