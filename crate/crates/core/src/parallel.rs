use rayon::prelude::*;

use crate::error::{Error, Result};

/// Smallest index in `0..total` for which `probe` returns `Some`, scanning with
/// `threads` workers. The answer does not depend on the worker count.
pub fn first_failure<T, F>(total: u64, threads: usize, probe: F) -> Result<Option<(u64, T)>>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    if threads <= 1 {
        return Ok((0..total).find_map(|i| probe(i).map(|t| (i, t))));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        (0..total)
            .into_par_iter()
            .find_map_first(|i| probe(i).map(|t| (i, t)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_answer_for_any_worker_count() {
        let probe = |i: u64| (i % 97 == 41 && i > 1000).then_some(i * 2);
        let one = first_failure(100_000, 1, probe).unwrap();
        assert_eq!(one, Some((1011, 2022)));
        assert_eq!(first_failure(100_000, 4, probe).unwrap(), one);
        assert_eq!(first_failure(10, 3, probe).unwrap(), None);
    }
}
