//! Sweep summaries do not depend on the thread count.

use projroots::{run_sweep, SweepSpec, SweepTarget};

fn summary(target: SweepTarget, ms: &[u32], threads: usize) -> String {
    let mut spec = SweepSpec::new(target, ms.to_vec());
    spec.parallelism = threads;
    serde_json::to_string(&run_sweep(&spec).unwrap().without_timings()).unwrap()
}

#[test]
fn same_summary_for_any_parallelism() {
    for (target, ms) in [
        (SweepTarget::Roots, vec![1, 2, 3, 4]),
        (SweepTarget::Main2, vec![1, 2, 3, 4]),
        (SweepTarget::Zheng2, vec![2, 3]),
        (SweepTarget::Ni, vec![1, 2]),
    ] {
        let one = summary(target, &ms, 1);
        assert_eq!(one, summary(target, &ms, 4), "{target}");
        assert_eq!(one, summary(target, &ms, 4), "{target}");
    }
}
