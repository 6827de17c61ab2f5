//! Periodic orbits of the reference cat map up to period 3, with winding
//! vectors, actions and stability data.

use scarlab::classical::{periodic_points, stability, CatMap};

fn main() -> scarlab::Result<()> {
    let map = CatMap::reference();
    let h = stability(&map, 1)?;
    println!("map {map}: lambda = {:.12}", h.lambda);
    println!("xi_u = {:?}, xi_s = {:?}", h.xi_u, h.xi_s);
    for l in 1..=3 {
        let c = stability(&map, l)?.cayley.0;
        println!("\nperiod {l}, Cayley matrix of M^{l}: [[{}, {}], [{}, {}]]", c[0][0], c[0][1], c[1][0], c[1][1]);
        for orbit in periodic_points(&map, l)?.into_iter().filter(|o| o.period == l) {
            let pts: Vec<String> = orbit.points.iter().map(|p| p.to_string()).collect();
            println!("  {}  S = {}  m = {:?}", pts.join(" -> "), orbit.action, orbit.windings);
        }
    }
    Ok(())
}
