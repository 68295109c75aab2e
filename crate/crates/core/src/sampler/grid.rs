//! The discrete shape grid {step, 2·step, …, K·step ≤ alpha_max}.

/// Shape grid of one family. Indices are zero-based; `value(0) = step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    step: f64,
    count: usize,
}

impl AlphaGrid {
    pub fn new(step: f64, alpha_max: f64) -> Self {
        assert!(step > 0.0 && alpha_max >= step);
        let count = (alpha_max / step + 1e-9).floor() as usize;
        AlphaGrid { step, count }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn value(&self, index: usize) -> f64 {
        debug_assert!(index < self.count);
        (index + 1) as f64 * self.step
    }

    pub fn max_value(&self) -> f64 {
        self.value(self.count - 1)
    }

    /// Index of a shape that must already lie on the grid.
    pub fn index_of(&self, alpha: f64) -> Option<usize> {
        let idx = (alpha / self.step).round() as isize - 1;
        if idx < 0 || idx as usize >= self.count {
            return None;
        }
        let idx = idx as usize;
        if (self.value(idx) - alpha).abs() < 1e-9 {
            Some(idx)
        } else {
            None
        }
    }

    /// Rounds to the nearest multiple of the step on the unbounded positive
    /// grid; `None` when that lands outside (0, alpha_max].
    pub fn snap(&self, alpha: f64) -> Option<usize> {
        if !alpha.is_finite() {
            return None;
        }
        let k = (alpha / self.step).round() as isize;
        if k < 1 || k as usize > self.count {
            None
        } else {
            Some(k as usize - 1)
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.value(i))
    }
}
