/// Counters collected by one driver invocation on one system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationStats {
    pub steps_accepted: u64,
    pub steps_rejected: u64,
    pub rhs_evals: u64,
    pub spec_rad_evals: u64,
    /// Power-method calls that hit the iteration cap.
    pub spec_rad_unconverged: u64,
    /// Smallest and largest accepted step; both 0 until a step is accepted.
    pub h_min_seen: f64,
    pub h_max_seen: f64,
    /// The step size fell below the floor; the state is frozen at the last
    /// accepted step.
    pub underflow: bool,
    /// The driver started with no carried-over controller state.
    pub cold_start: bool,
}

impl Default for IntegrationStats {
    fn default() -> Self {
        Self {
            steps_accepted: 0,
            steps_rejected: 0,
            rhs_evals: 0,
            spec_rad_evals: 0,
            spec_rad_unconverged: 0,
            h_min_seen: 0.0,
            h_max_seen: 0.0,
            underflow: false,
            cold_start: true,
        }
    }
}

impl IntegrationStats {
    pub(crate) fn record_accepted(&mut self, h: f64) {
        if self.steps_accepted == 0 {
            self.h_min_seen = h;
            self.h_max_seen = h;
        } else {
            self.h_min_seen = self.h_min_seen.min(h);
            self.h_max_seen = self.h_max_seen.max(h);
        }
        self.steps_accepted += 1;
    }
}

/// Totals over many systems (and possibly many outer windows).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BatchStats {
    pub systems: usize,
    pub windows: usize,
    pub steps_accepted: u64,
    pub steps_rejected: u64,
    pub rhs_evals: u64,
    pub spec_rad_evals: u64,
    pub spec_rad_unconverged: u64,
    pub h_min_seen: f64,
    pub h_max_seen: f64,
    /// Number of (system, window) integrations that began cold.
    pub cold_starts: u64,
    /// Systems that underflowed in any window, ascending and deduplicated.
    pub underflowed_systems: Vec<usize>,
}

impl BatchStats {
    /// Aggregates one window's per-system stats.
    pub fn from_systems(per_system: &[IntegrationStats]) -> Self {
        let mut out = Self {
            systems: per_system.len(),
            windows: 1,
            ..Self::default()
        };
        let mut any_step = false;
        for (i, s) in per_system.iter().enumerate() {
            out.steps_accepted += s.steps_accepted;
            out.steps_rejected += s.steps_rejected;
            out.rhs_evals += s.rhs_evals;
            out.spec_rad_evals += s.spec_rad_evals;
            out.spec_rad_unconverged += s.spec_rad_unconverged;
            out.cold_starts += u64::from(s.cold_start);
            if s.steps_accepted > 0 {
                if any_step {
                    out.h_min_seen = out.h_min_seen.min(s.h_min_seen);
                    out.h_max_seen = out.h_max_seen.max(s.h_max_seen);
                } else {
                    out.h_min_seen = s.h_min_seen;
                    out.h_max_seen = s.h_max_seen;
                    any_step = true;
                }
            }
            if s.underflow {
                out.underflowed_systems.push(i);
            }
        }
        out
    }

    /// Folds another window's totals into this one.
    pub fn merge(&mut self, other: &BatchStats) {
        let had_steps = self.steps_accepted > 0;
        self.systems = self.systems.max(other.systems);
        self.windows += other.windows;
        self.steps_accepted += other.steps_accepted;
        self.steps_rejected += other.steps_rejected;
        self.rhs_evals += other.rhs_evals;
        self.spec_rad_evals += other.spec_rad_evals;
        self.spec_rad_unconverged += other.spec_rad_unconverged;
        self.cold_starts += other.cold_starts;
        if other.steps_accepted > 0 {
            if had_steps {
                self.h_min_seen = self.h_min_seen.min(other.h_min_seen);
                self.h_max_seen = self.h_max_seen.max(other.h_max_seen);
            } else {
                self.h_min_seen = other.h_min_seen;
                self.h_max_seen = other.h_max_seen;
            }
        }
        self.underflowed_systems
            .extend_from_slice(&other.underflowed_systems);
        self.underflowed_systems.sort_unstable();
        self.underflowed_systems.dedup();
    }
}

/// Snapshot handed to driver observers after each accepted step.
#[derive(Debug)]
pub struct AcceptedStep<'a> {
    /// Time reached by the step.
    pub t: f64,
    /// Size of the step just taken.
    pub h: f64,
    /// Error norm of the step (at most 1).
    pub err: f64,
    /// Stage count used (always 6 for RKCK).
    pub stages: usize,
    /// State at `t`.
    pub y: &'a [f64],
}
