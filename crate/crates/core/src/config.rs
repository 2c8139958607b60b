use serde::Serialize;

/// Whether comparisons may use the class calculus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparePolicy {
    /// Symbolic normal forms first, numeric sampling when they are unavailable.
    #[default]
    Auto,
    /// Always sample; used to cross-check the symbolic path.
    ForceNumeric,
}

/// Tunables of the comparison and search procedures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineConfig {
    /// Index window `[start, end]` of the numeric sampling grid.
    pub window: (u64, u64),
    pub grid_points: usize,
    /// Witness constants are this multiple of the observed supremum.
    pub bound_factor: f64,
    pub divergence_threshold: f64,
    pub vanishing_threshold: f64,
    /// Largest ampliation order tried on the sequence itself.
    pub k_max: u64,
    /// Largest ampliation order tried on a generator.
    pub m_max: u64,
    pub policy: ComparePolicy,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            window: (1 << 4, 1 << 20),
            grid_points: 64,
            bound_factor: 2.0,
            divergence_threshold: 1e3,
            vanishing_threshold: 1e-3,
            k_max: 32,
            m_max: 32,
            policy: ComparePolicy::Auto,
        }
    }
}

impl EngineConfig {
    pub fn numeric(mut self) -> Self {
        self.policy = ComparePolicy::ForceNumeric;
        self
    }

    /// Geometric index grid over the window, strictly increasing.
    pub fn grid(&self) -> Vec<u64> {
        let (lo, hi) = (self.window.0.max(1), self.window.1.max(self.window.0.max(1)));
        let pts = self.grid_points.max(2);
        let ratio = (hi as f64 / lo as f64).ln();
        let mut out: Vec<u64> = (0..pts)
            .map(|i| {
                let t = i as f64 / (pts - 1) as f64;
                ((lo as f64) * (ratio * t).exp()).round() as u64
            })
            .map(|n| n.clamp(lo, hi))
            .collect();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spans_window() {
        let g = EngineConfig::default().grid();
        assert_eq!(g.first(), Some(&16));
        assert_eq!(g.last(), Some(&(1 << 20)));
        assert_eq!(g.len(), 64);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
