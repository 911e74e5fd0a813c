use crate::model::TaskClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("compute assigned to a task with infinite automation cost")]
    InfiniteCostWithCompute,

    #[error("marginal product of the {0} aggregate is undefined at a zero input")]
    UndefinedMarginal(TaskClass),

    #[error("economy has neither labor nor compute")]
    DegenerateEconomy,

    #[error("output is identically zero: {0}")]
    InfeasibleSpec(&'static str),

    #[error("output must be strictly positive (found {value} at t = {t})")]
    NonPositiveOutput { t: f64, value: f64 },

    #[error("at t = {t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
