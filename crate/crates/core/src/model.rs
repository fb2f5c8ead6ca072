//! Pooling layer configurations and their window families.
//!
//! A max-pooling layer on a `K_1 x ... x K_nu` array with windows of shape
//! `k_1 x ... x k_nu` and stride `s` computes one maximum per window
//! position. All that matters for the face structure of its Newton polytope is
//! the family of flattened index sets the windows cover, which is what
//! [`WindowFamily`] holds.

use crate::error::{Error, Result};

/// A max-pooling layer of arbitrary array dimension with one shared stride.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolingSpec {
    input_dims: Vec<usize>,
    window_dims: Vec<usize>,
    stride: usize,
}

impl PoolingSpec {
    pub fn new(input_dims: Vec<usize>, window_dims: Vec<usize>, stride: usize) -> Result<Self> {
        if input_dims.is_empty() {
            return Err(Error::InvalidSpec(
                "array dimension must be positive".into(),
            ));
        }
        if input_dims.len() != window_dims.len() {
            return Err(Error::InvalidSpec(format!(
                "{} input dims but {} window dims",
                input_dims.len(),
                window_dims.len()
            )));
        }
        if stride == 0 {
            return Err(Error::InvalidSpec("stride must be at least 1".into()));
        }
        for (axis, (&big, &small)) in input_dims.iter().zip(&window_dims).enumerate() {
            if big == 0 || small == 0 {
                return Err(Error::InvalidSpec(format!(
                    "axis {axis} has a zero dimension"
                )));
            }
            if small > big {
                return Err(Error::InvalidSpec(format!(
                    "axis {axis}: window {small} exceeds input {big}"
                )));
            }
        }
        Ok(Self {
            input_dims,
            window_dims,
            stride,
        })
    }

    /// One-dimensional layer with `n` windows of size `k`, input trimmed to
    /// `s(n-1)+k`.
    pub fn one_dim(n: usize, k: usize, s: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("need at least one window".into()));
        }
        if s == 0 {
            return Err(Error::InvalidSpec("stride must be at least 1".into()));
        }
        Self::new(vec![s * (n - 1) + k], vec![k], s)
    }

    pub fn nu(&self) -> usize {
        self.input_dims.len()
    }

    pub fn input_dims(&self) -> &[usize] {
        &self.input_dims
    }

    pub fn window_dims(&self) -> &[usize] {
        &self.window_dims
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Number of window positions along each axis.
    fn positions_per_axis(&self) -> Vec<usize> {
        self.input_dims
            .iter()
            .zip(&self.window_dims)
            .map(|(&big, &small)| (big - small) / self.stride + 1)
            .collect()
    }
}

/// An ordered family of nonempty windows covering `{0, .., d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindowFamily {
    ambient_size: usize,
    windows: Vec<Vec<usize>>,
}

impl WindowFamily {
    /// Builds a family, sorting each window. Every coordinate below
    /// `ambient_size` must be covered by some window.
    pub fn new(ambient_size: usize, windows: Vec<Vec<usize>>) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::InvalidSpec(
                "a family needs at least one window".into(),
            ));
        }
        let mut covered = vec![false; ambient_size];
        let mut sorted = Vec::with_capacity(windows.len());
        for (i, mut w) in windows.into_iter().enumerate() {
            w.sort_unstable();
            w.dedup();
            if w.is_empty() {
                return Err(Error::InvalidSpec(format!("window {i} is empty")));
            }
            for &a in &w {
                if a >= ambient_size {
                    return Err(Error::InvalidSpec(format!(
                        "window {i} contains {a}, outside 0..{ambient_size}"
                    )));
                }
                covered[a] = true;
            }
            sorted.push(w);
        }
        if let Some(a) = covered.iter().position(|&c| !c) {
            return Err(Error::InvalidSpec(format!(
                "coordinate {a} is not covered by any window"
            )));
        }
        Ok(Self {
            ambient_size,
            windows: sorted,
        })
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    pub fn windows(&self) -> &[Vec<usize>] {
        &self.windows
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn window(&self, i: usize) -> &[usize] {
        &self.windows[i]
    }
}

/// Materializes the windows of a pooling layer, row-major flattened and
/// relabeled so that the union of all windows is `{0, .., d-1}`.
pub fn windows_from_spec(spec: &PoolingSpec) -> WindowFamily {
    let nu = spec.nu();
    let positions = spec.positions_per_axis();
    let mut strides = vec![1usize; nu];
    for l in (0..nu.saturating_sub(1)).rev() {
        strides[l] = strides[l + 1] * spec.input_dims[l + 1];
    }

    let mut raw = Vec::new();
    let mut r = vec![0usize; nu];
    loop {
        let mut offsets = vec![0usize; nu];
        let mut window = Vec::new();
        loop {
            let flat: usize = (0..nu)
                .map(|l| (spec.stride * r[l] + offsets[l]) * strides[l])
                .sum();
            window.push(flat);
            if !odometer_step(&mut offsets, &spec.window_dims) {
                break;
            }
        }
        raw.push(window);
        if !odometer_step(&mut r, &positions) {
            break;
        }
    }

    let total: usize = spec.input_dims.iter().product();
    let mut relabel = vec![usize::MAX; total];
    for w in &raw {
        for &a in w {
            relabel[a] = 0;
        }
    }
    let mut next = 0;
    for slot in relabel.iter_mut().filter(|x| **x == 0) {
        *slot = next;
        next += 1;
    }
    let windows = raw
        .into_iter()
        .map(|w| w.into_iter().map(|a| relabel[a]).collect())
        .collect();
    WindowFamily::new(next, windows).expect("pooling windows cover their relabeled union")
}

/// Advances a row-major multi-index; returns false after wrapping around.
fn odometer_step(index: &mut [usize], bounds: &[usize]) -> bool {
    for l in (0..index.len()).rev() {
        index[l] += 1;
        if index[l] < bounds[l] {
            return true;
        }
        index[l] = 0;
    }
    false
}

/// The windows `{si, .., si+k-1}` for `i = 0..n`.
pub fn spec_1d(n: usize, k: usize, s: usize) -> Result<WindowFamily> {
    if n == 0 || k == 0 || s == 0 {
        return Err(Error::InvalidParams(format!(
            "need n, k, s >= 1, got ({n}, {k}, {s})"
        )));
    }
    // Gaps left by a stride above k hold no coordinate and are trimmed.
    let step = s.min(k);
    let windows = (0..n).map(|i| (step * i..step * i + k).collect()).collect();
    WindowFamily::new(step * (n - 1) + k, windows)
}

/// The `2(n-1)` square 2x2 windows on a 3 x n grid, ordered by top row first.
pub fn spec_3xn(n: usize) -> Result<WindowFamily> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "3 x n grid needs n >= 2, got {n}"
        )));
    }
    let flat = |i: usize, j: usize| i * n + j;
    let mut windows = Vec::with_capacity(2 * (n - 1));
    for i in 0..2 {
        for j in 0..n - 1 {
            windows.push(vec![
                flat(i, j),
                flat(i, j + 1),
                flat(i + 1, j),
                flat(i + 1, j + 1),
            ]);
        }
    }
    WindowFamily::new(3 * n, windows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dim_spec_matches_direct_windows() {
        let fam = windows_from_spec(&PoolingSpec::new(vec![4], vec![3], 1).unwrap());
        assert_eq!(fam.ambient_size(), 4);
        assert_eq!(fam.windows(), &[vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn single_window_covers_everything() {
        let fam = windows_from_spec(&PoolingSpec::new(vec![5], vec![5], 3).unwrap());
        assert_eq!(fam.windows(), &[vec![0, 1, 2, 3, 4]]);
        assert_eq!(fam.ambient_size(), 5);
    }

    #[test]
    fn grid_3x2_is_row_major() {
        let spec = PoolingSpec::new(vec![3, 2], vec![2, 2], 1).unwrap();
        let fam = windows_from_spec(&spec);
        assert_eq!(fam.ambient_size(), 6);
        assert_eq!(fam.windows(), &[vec![0, 1, 2, 3], vec![2, 3, 4, 5]]);
        assert_eq!(fam, spec_3xn(2).unwrap());
    }

    #[test]
    fn grid_3xn_matches_spec_helper() {
        for n in 2..7 {
            let spec = PoolingSpec::new(vec![3, n], vec![2, 2], 1).unwrap();
            assert_eq!(windows_from_spec(&spec), spec_3xn(n).unwrap());
        }
    }

    #[test]
    fn unused_coordinates_are_trimmed() {
        // K = 6, k = 2, s = 3: windows {0,1}, {3,4}; coordinates 2 and 5 are unused.
        let fam = windows_from_spec(&PoolingSpec::new(vec![6], vec![2], 3).unwrap());
        assert_eq!(fam.ambient_size(), 4);
        assert_eq!(fam.windows(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn spec_1d_examples() {
        assert_eq!(
            spec_1d(2, 3, 1).unwrap().windows(),
            &[vec![0, 1, 2], vec![1, 2, 3]]
        );
        let single = spec_1d(1, 5, 2).unwrap();
        assert_eq!(single.windows(), &[vec![0, 1, 2, 3, 4]]);
        assert_eq!(single.ambient_size(), 5);
        let fam = spec_1d(3, 4, 2).unwrap();
        assert_eq!(
            fam.windows(),
            &[vec![0, 1, 2, 3], vec![2, 3, 4, 5], vec![4, 5, 6, 7]]
        );
        assert_eq!(fam.ambient_size(), 8);
    }

    #[test]
    fn spec_3xn_sizes() {
        for (n, windows, d) in [(2, 2, 6), (3, 4, 9), (4, 6, 12)] {
            let fam = spec_3xn(n).unwrap();
            assert_eq!(fam.len(), windows);
            assert_eq!(fam.ambient_size(), d);
            assert!(fam.windows().iter().all(|w| w.len() == 4));
        }
        assert_eq!(spec_3xn(3).unwrap().window(1), &[1, 2, 4, 5]);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(PoolingSpec::new(vec![2], vec![3], 1).is_err());
        assert!(PoolingSpec::new(vec![4], vec![2], 0).is_err());
        assert!(PoolingSpec::new(vec![4, 4], vec![2], 1).is_err());
        assert!(PoolingSpec::new(vec![], vec![], 1).is_err());
        assert!(spec_3xn(1).is_err());
        assert!(WindowFamily::new(3, vec![vec![0, 1]]).is_err());
        assert!(WindowFamily::new(2, vec![vec![]]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn one_dim_windows_agree(n in 1usize..8, k in 1usize..7, s in 1usize..7) {
            let spec = PoolingSpec::one_dim(n, k, s).unwrap();
            let fam = windows_from_spec(&spec);
            let direct = spec_1d(n, k, s).unwrap();
            proptest::prop_assert_eq!(&fam, &direct);
            for pair in direct.windows().windows(2) {
                let overlap = pair[0].iter().filter(|a| pair[1].contains(a)).count();
                proptest::prop_assert_eq!(overlap, k.saturating_sub(s));
            }
            proptest::prop_assert!(direct.windows().iter().all(|w| w.len() == k));
        }

        #[test]
        fn spec_windows_are_valid(
            dims in proptest::collection::vec((1usize..5, 1usize..4), 1..4),
            s in 1usize..3,
        ) {
            let input: Vec<usize> = dims.iter().map(|&(k, extra)| k + extra - 1).collect();
            let window: Vec<usize> = dims.iter().map(|&(k, _)| k).collect();
            let spec = PoolingSpec::new(input, window.clone(), s).unwrap();
            let fam = windows_from_spec(&spec);
            let size: usize = window.iter().product();
            proptest::prop_assert!(fam.windows().iter().all(|w| w.len() == size));
            // WindowFamily::new already enforced coverage and bounds.
            proptest::prop_assert!(fam.ambient_size() > 0);
        }
    }
}
