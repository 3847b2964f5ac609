use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("link index {index} out of range for a network of {n_links} links")]
    InvalidLinkIndex { index: usize, n_links: usize },

    #[error("instance too large for exhaustive oracle (more than {cap} feasible sets)")]
    InstanceTooLarge { cap: usize },

    #[error("exact Λ_S solve limited to small instances: {n_links} links exceeds the cap of {cap}")]
    StateCapExceeded { n_links: usize, cap: usize },

    #[error("unschedulable link {link}: it belongs to no feasible activation set")]
    UnschedulableLink { link: usize },

    #[error("solver did not converge in {iterations} iterations (last duality gap {gap:e})")]
    NotConverged { iterations: usize, gap: f64 },

    #[error("invalid solver settings: {0}")]
    InvalidSettings(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code for the experiment runner.
    ///
    /// `0` is success, `2` a configuration error, `3` an infeasible instance
    /// and `4` solver non-convergence. I/O failures map to `1`.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidNetwork(_)
            | Error::InvalidLinkIndex { .. }
            | Error::InvalidSettings(_)
            | Error::Config(_)
            | Error::Json(_) => 2,
            Error::UnschedulableLink { .. }
            | Error::InstanceTooLarge { .. }
            | Error::StateCapExceeded { .. } => 3,
            Error::NotConverged { .. } => 4,
            Error::Io(_) | Error::Csv(_) => 1,
        }
    }
}
