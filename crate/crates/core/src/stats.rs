//! Small summary statistics used by the Monte Carlo routines.

/// Sample mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
    pub count: usize,
}

impl MeanSe {
    /// Summarises `values` in order (so results are reproducible bit for bit).
    pub fn of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Self {
                mean: 0.0,
                se: 0.0,
                count: 0,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let se = if n > 1 {
            let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, se, count: n }
    }

    /// Relative standard error; infinite for a zero mean.
    pub fn rel_se(&self) -> f64 {
        if self.mean == 0.0 {
            f64::INFINITY
        } else {
            self.se / self.mean.abs()
        }
    }

    /// Whether `[mean ± z·se]` overlaps the other interval.
    pub fn overlaps(&self, other: &MeanSe, z: f64) -> bool {
        (self.mean - other.mean).abs() <= z * (self.se + other.se)
    }
}
