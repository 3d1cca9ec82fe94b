//! Times long-exact-sequence checks on random complexes, per group.

use std::time::Instant;

use galcoh::hyper::verify_les_exactness;
use galcoh::random::{named_group, random_complex, rng_from_seed};

fn main() {
    for name in ["cyclic2", "cyclic3", "cyclic4", "s3"] {
        let g = named_group(name).unwrap();
        let mut rng = rng_from_seed(1);
        let t = Instant::now();
        let mut ok = 0;
        for _ in 0..20 {
            let cx = random_complex(&g, 3, &mut rng).unwrap();
            if verify_les_exactness(&cx, 2).unwrap().pass() {
                ok += 1;
            }
        }
        println!("{name}: {ok}/20 in {:?}", t.elapsed());
    }
}
