use std::collections::BTreeMap;

use serde::Serialize;

use crate::geometry::Params;

/// Acceptance region of one statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    AtMost {
        limit: f64,
    },
    AtLeast {
        limit: f64,
    },
    /// `|value - target| ≤ tolerance · |target|`
    Relative {
        target: f64,
        tolerance: f64,
    },
    /// `|value - target| ≤ tolerance`
    Absolute {
        target: f64,
        tolerance: f64,
    },
}

impl Bound {
    pub fn at_most(limit: f64) -> Self {
        Self::AtMost { limit }
    }

    pub fn at_least(limit: f64) -> Self {
        Self::AtLeast { limit }
    }

    pub fn relative(target: f64, tolerance: f64) -> Self {
        Self::Relative { target, tolerance }
    }

    pub fn absolute(target: f64, tolerance: f64) -> Self {
        Self::Absolute { target, tolerance }
    }

    pub fn holds(&self, value: f64) -> bool {
        if !value.is_finite() {
            return false;
        }
        match *self {
            Self::AtMost { limit } => value <= limit,
            Self::AtLeast { limit } => value >= limit,
            Self::Relative { target, tolerance } => (value - target).abs() <= tolerance * target.abs(),
            Self::Absolute { target, tolerance } => (value - target).abs() <= tolerance,
        }
    }
}

/// Parameters a report was produced with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportParams {
    pub n: usize,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl From<Params> for ReportParams {
    fn from(params: Params) -> Self {
        Self { n: params.n, alpha: params.alpha, beta: None, p: None }
    }
}

/// One sample of a sweep, used for CSV output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRow {
    pub series: String,
    pub abscissa: f64,
    pub ordinate: f64,
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub check_id: String,
    pub params: ReportParams,
    pub grid_spec: String,
    pub statistics: BTreeMap<String, f64>,
    pub bounds: BTreeMap<String, Bound>,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime: Option<f64>,
    #[serde(skip)]
    pub rows: Vec<GridRow>,
}

impl VerifyReport {
    pub fn new(check_id: &str, params: ReportParams, grid_spec: impl Into<String>, tolerance: f64) -> Self {
        let mut report = Self {
            check_id: check_id.to_owned(),
            params,
            grid_spec: grid_spec.into(),
            statistics: BTreeMap::new(),
            bounds: BTreeMap::new(),
            tolerance,
            passed: false,
            runtime: None,
            rows: Vec::new(),
        };
        report.passed = report.verdict();
        report
    }

    /// Records a statistic that must satisfy `bound`.
    pub fn check(&mut self, name: &str, value: f64, bound: Bound) -> &mut Self {
        self.statistics.insert(name.to_owned(), value);
        self.bounds.insert(name.to_owned(), bound);
        self.passed = self.verdict();
        self
    }

    /// Records an informational statistic.
    pub fn info(&mut self, name: &str, value: f64) -> &mut Self {
        self.statistics.insert(name.to_owned(), value);
        self
    }

    pub fn row(&mut self, series: &str, abscissa: f64, ordinate: f64) -> &mut Self {
        self.rows.push(GridRow { series: series.to_owned(), abscissa, ordinate });
        self
    }

    /// Absorbs the statistics, bounds and rows of `other` under a name prefix.
    pub fn merge(&mut self, prefix: &str, other: VerifyReport) -> &mut Self {
        for (k, v) in other.statistics {
            self.statistics.insert(format!("{prefix}.{k}"), v);
        }
        for (k, b) in other.bounds {
            self.bounds.insert(format!("{prefix}.{k}"), b);
        }
        for row in other.rows {
            self.rows.push(GridRow { series: format!("{prefix}.{}", row.series), ..row });
        }
        self.passed = self.verdict();
        self
    }

    /// `true` iff every bounded statistic lies in its acceptance region and
    /// at least one statistic is bounded.
    pub fn verdict(&self) -> bool {
        !self.bounds.is_empty()
            && self.bounds.iter().all(|(name, bound)| self.statistics.get(name).is_some_and(|&v| bound.holds(v)))
    }

    /// Names of the statistics outside their bounds.
    pub fn failures(&self) -> Vec<&str> {
        self.bounds
            .iter()
            .filter(|(name, bound)| !self.statistics.get(*name).is_some_and(|&v| bound.holds(v)))
            .map(|(name, _)| name.as_str())
            .collect()
    }
}
