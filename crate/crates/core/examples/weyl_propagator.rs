//! The Weyl symbol of U^l from the position kernel against the closed form
//! built from the center generating function.

use scarlab::classical::CatMap;
use scarlab::quantum::{propagator, TorusSpace};
use scarlab::wigner::{weyl_propagator_closed_form, weyl_symbol_of_operator};

fn main() -> scarlab::Result<()> {
    let map = CatMap::reference();
    for n in [7, 31, 101] {
        let s = TorusSpace::new(n)?;
        let u = propagator(&s, &map)?;
        println!("N = {n}: unitarity residual {:.1e}", u.unitarity_residual());
        for l in 1..=3 {
            let direct = weyl_symbol_of_operator(&s, &u.pow(l))?;
            let closed = weyl_propagator_closed_form(&s, &map, l)?;
            println!("  l = {l}: max |direct - closed| = {:.2e}, U(0,0) = {:.6}", direct.max_abs_diff(&closed), direct.get(0, 0));
        }
    }
    Ok(())
}
