//! Thread-pool sampling. Draw `i` always uses stream `i`, so the output does
//! not depend on the number of threads.

use levyasym_core::montecarlo::{draw_stream, Sampler, SplitSampler};
use rayon::prelude::*;

pub const THREADS_ENV: &str = "LEVYASYM_THREADS";

/// Thread count from `LEVYASYM_THREADS`, if set to a positive integer.
pub fn env_threads() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

fn with_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .expect("thread pool");
    pool.install(job)
}

pub fn sample(sampler: &Sampler, n: usize, seed: u64, threads: Option<usize>) -> Vec<f64> {
    with_pool(threads, || {
        (0..n as u64)
            .into_par_iter()
            .map(|i| sampler.draw_at(seed, i))
            .collect()
    })
}

/// `(T⁽¹⁾, T)` for each draw.
pub fn sample_split(
    sampler: &SplitSampler,
    n: usize,
    seed: u64,
    threads: Option<usize>,
) -> (Vec<f64>, Vec<f64>) {
    with_pool(threads, || {
        (0..n as u64)
            .into_par_iter()
            .map(|i| {
                let (l, u) = sampler.draw_parts(&mut draw_stream(seed, i));
                (l, l + u)
            })
            .unzip()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use levyasym_core::density::{Builtin, LevyDensitySpec};
    use levyasym_core::montecarlo::{run, DEFAULT_TOL};

    #[test]
    fn same_values_as_serial() {
        let s = LevyDensitySpec::builtin(Builtin::Truncated(0.3)).unwrap();
        let sampler = Sampler::for_spec(&s, 1.0, 0.25, DEFAULT_TOL).unwrap();
        let serial = run(&sampler, 5000, 17);
        assert_eq!(sample(&sampler, 5000, 17, Some(1)), serial);
        assert_eq!(sample(&sampler, 5000, 17, Some(8)), serial);
    }
}
