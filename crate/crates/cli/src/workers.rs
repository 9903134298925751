//! Thread-pool selection for campaigns.

/// Runs `job` on a dedicated pool with `workers` threads (`0` = rayon's
/// default). Results never depend on the worker count: callers reduce with
/// order-independent operations over order-preserving collections.
pub fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}
