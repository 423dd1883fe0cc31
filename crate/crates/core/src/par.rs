//! Sequential/parallel execution helpers. Every reduction used with these is
//! an exact integer merge, so results are identical for any worker count.

use core::ops::Range;

#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
/// Splits `0..total` into at most `pieces` contiguous ranges.
pub(crate) fn split(total: u64, pieces: u64) -> impl Iterator<Item = Range<u64>> + Clone {
    let pieces = pieces.clamp(1, total.max(1));
    let step = total.div_ceil(pieces);
    (0..pieces).map(move |i| (i * step).min(total)..((i + 1) * step).min(total)).filter(|r| !r.is_empty())
}

/// Maps each range of a split of `0..total` and folds the results with `merge`.
#[cfg(feature = "parallel")]
pub(crate) fn map_reduce<T, M, R>(total: u64, map: M, identity: impl Fn() -> T + Sync + Send, merge: R) -> T
where
    T: Send,
    M: Fn(Range<u64>) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    use alloc::vec::Vec;
    use rayon::prelude::*;
    let pieces = (rayon::current_num_threads() as u64 * 8).max(1);
    let ranges: Vec<Range<u64>> = split(total, pieces).collect();
    ranges.into_par_iter().map(map).reduce(identity, merge)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_reduce<T, M, R>(total: u64, map: M, identity: impl Fn() -> T, _merge: R) -> T
where
    M: Fn(Range<u64>) -> T,
    R: Fn(T, T) -> T,
{
    if total == 0 {
        return identity();
    }
    map(0..total)
}

/// Runs `body(index, chunk)` over consecutive `chunk_len`-sized blocks of `out`.
#[cfg(feature = "parallel")]
pub(crate) fn for_each_block<T: Send>(out: &mut [T], chunk_len: usize, body: impl Fn(usize, &mut [T]) + Sync + Send) {
    use rayon::prelude::*;
    out.par_chunks_mut(chunk_len).enumerate().for_each(|(i, c)| body(i, c));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn for_each_block<T>(out: &mut [T], chunk_len: usize, body: impl Fn(usize, &mut [T])) {
    out.chunks_mut(chunk_len).enumerate().for_each(|(i, c)| body(i, c));
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn split_covers_range() {
        for total in [0u64, 1, 7, 100, 1001] {
            for pieces in [1u64, 3, 8, 2000] {
                let parts: Vec<_> = split(total, pieces).collect();
                let covered: u64 = parts.iter().map(|r| r.end - r.start).sum();
                assert_eq!(covered, total);
                assert!(parts.windows(2).all(|w| w[0].end == w[1].start));
            }
        }
    }
}
