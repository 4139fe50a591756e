use rayon::prelude::*;

/// Evaluates `task(0..count)` on `jobs` worker threads (`0` = rayon's
/// default) and returns the results in index order, so the output never
/// depends on the worker count.
pub fn run_indexed<T, F>(jobs: usize, count: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if jobs == 1 {
        return (0..count).map(task).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| (0..count).into_par_iter().map(task).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_jobs() {
        let one = run_indexed(1, 500, |i| i * i);
        for jobs in [0, 2, 4, 7] {
            assert_eq!(run_indexed(jobs, 500, |i| i * i), one);
        }
    }
}
