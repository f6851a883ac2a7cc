use f1geom::cone::*;
use f1geom::scheme::count_points_fq;
use f1geom::Budget;
use std::time::Instant;

fn main() {
    let b = Budget::default();
    let t0 = Instant::now();
    for (name, fan) in [
        ("P1", fan_p1()),
        ("P2", fan_p2()),
        ("P1xP1", fan_p1xp1()),
        ("H1", fan_hirzebruch(1)),
    ] {
        for q in [2u64, 3, 4, 5] {
            let t = Instant::now();
            let r = count_points_fq(&fan, q, &b).unwrap();
            println!(
                "{name} q={q}: glue={} oracle={} agree={} ({:?})",
                r.glue_count,
                r.cone_sum,
                r.agree(),
                t.elapsed()
            );
            assert!(r.agree());
        }
    }
    println!("TOTAL {:?}", t0.elapsed());
}
