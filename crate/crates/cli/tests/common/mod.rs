use std::path::Path;
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Assessed-ranking text: `queries` x `assessors` units of `depth` documents,
/// each assessor seeing a partly different top list.
pub fn synthetic_assessments(seed: u64, queries: usize, assessors: usize, depth: usize) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = String::from("# query assessor rank doc relevance credibility\n");
    for q in 1..=queries {
        for a in 1..=assessors {
            let offset = rng.gen_range(0..3);
            for rank in 1..=depth {
                let rel = rng.gen_range(1..=4);
                let cred = rng.gen_range(1..=4);
                out.push_str(&format!(
                    "q{q} a{a} {rank} q{q}-doc{} {rel} {cred}\n",
                    rank + offset
                ));
            }
        }
    }
    out
}

pub fn credeval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_credeval"))
        .args(args)
        .output()
        .expect("credeval binary runs")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}
