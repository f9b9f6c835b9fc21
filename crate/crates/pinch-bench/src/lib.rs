//! Shared fixtures for the criterion benches.

use pinch::generators::{self, AnnulusFamily, Convention};
use pinch::Graph;

/// Named graphs of a size the exact routines handle in milliseconds.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![
        ("k6", Graph::complete(6)),
        ("k7", Graph::complete(7)),
        ("petersen", Graph::petersen()),
        ("grid5", generators::grid(5, 5).expect("grid").graph),
        ("gnp10", generators::gnp(10, 0.4, 7).expect("gnp")),
        (
            "long_jump1",
            generators::enhanced_annulus(AnnulusFamily::LongJump, 1, Convention::Fig3)
                .expect("annulus")
                .graph,
        ),
    ]
}

pub fn fixture(name: &str) -> Graph {
    fixtures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
        .expect("known fixture")
}
