/// Coefficient field used by the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldMode {
    #[default]
    Rational,
    /// Arithmetic modulo `2^31 - 1`. With `confirm` the reported values are
    /// recomputed over the rationals and compared.
    Prime { confirm: bool },
}

/// Truncation bound on the `u`-degree of sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Start from a default bound and escalate until two runs agree.
    #[default]
    Auto,
    /// Use exactly this bound; the result is not certified.
    Fixed(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ComputeOptions {
    pub field: FieldMode,
    pub truncation: Truncation,
    /// Escalation steps allowed before giving up.
    pub max_increments: Option<u32>,
}

impl ComputeOptions {
    pub fn increments(&self) -> u32 {
        self.max_increments.unwrap_or(4)
    }
}
