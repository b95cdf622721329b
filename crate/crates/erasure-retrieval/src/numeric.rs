//! Small numeric helpers shared across modules.

/// Compensated (Neumaier) summation. Keeps long accumulations accurate to a
/// few ulps regardless of term count or ordering.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Ceiling with a small relative slack: values within 1e-9 of an integer are
/// treated as that integer. Ratios such as 1/R for R = 1/3 land a few ulps
/// above the exact integer in binary arithmetic; a plain ceiling would then
/// overshoot by one.
pub fn ceil_with_slack(x: f64) -> f64 {
    debug_assert!(x.is_finite());
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}
