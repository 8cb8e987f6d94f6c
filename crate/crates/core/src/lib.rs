pub mod cli;
pub mod exact;
pub mod fibers;
pub mod forms;
pub mod homology;
pub mod json;
pub mod park;
pub mod pencil;
pub mod plumbing;

#[cfg(test)]
pub(crate) fn fixed_seed(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_0007),
        failure_persistence: None,
        ..Default::default()
    }
}
