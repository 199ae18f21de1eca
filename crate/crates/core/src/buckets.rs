/// Compressed per-bucket lists: `items[offsets[b]..offsets[b + 1]]` is bucket `b`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Buckets<T> {
    offsets: Vec<u32>,
    items: Vec<T>,
}

impl<T: Copy + Default> Buckets<T> {
    /// Counting-sort construction. `fill` is called twice with the same
    /// sequence of `(bucket, item)` emissions: once to size, once to place.
    pub(crate) fn build(n_buckets: usize, mut fill: impl FnMut(&mut dyn FnMut(usize, T))) -> Self {
        let mut counts = vec![0u32; n_buckets + 1];
        fill(&mut |b, _| counts[b + 1] += 1);
        for b in 0..n_buckets {
            counts[b + 1] += counts[b];
        }
        let offsets = counts.clone();
        let mut cursor = counts;
        let mut items = vec![T::default(); offsets[n_buckets] as usize];
        fill(&mut |b, item| {
            let slot = &mut cursor[b];
            items[*slot as usize] = item;
            *slot += 1;
        });
        Self { offsets, items }
    }
}

impl<T> Buckets<T> {
    #[inline]
    pub(crate) fn get(&self, b: usize) -> &[T] {
        let lo = self.offsets[b] as usize;
        let hi = self.offsets[b + 1] as usize;
        &self.items[lo..hi]
    }

    pub(crate) fn bucket_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub(crate) fn total(&self) -> usize {
        self.items.len()
    }

    pub(crate) fn max_len(&self) -> usize {
        self.offsets
            .windows(2)
            .map(|w| (w[1] - w[0]) as usize)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn min_len(&self) -> usize {
        self.offsets
            .windows(2)
            .map(|w| (w[1] - w[0]) as usize)
            .min()
            .unwrap_or(0)
    }

    pub(crate) fn heap_bytes(&self) -> usize {
        self.offsets.len() * std::mem::size_of::<u32>() + self.items.len() * std::mem::size_of::<T>()
    }
}

impl<T: Clone> Buckets<T> {
    /// Rebuilds with bucket `b` replaced by `replacement`.
    pub(crate) fn with_bucket(&self, b: usize, replacement: &[T]) -> Self {
        let mut offsets = Vec::with_capacity(self.offsets.len());
        let mut items = Vec::with_capacity(self.items.len() + replacement.len());
        offsets.push(0);
        for k in 0..self.bucket_count() {
            if k == b {
                items.extend_from_slice(replacement);
            } else {
                items.extend_from_slice(self.get(k));
            }
            offsets.push(items.len() as u32);
        }
        Self { offsets, items }
    }
}
