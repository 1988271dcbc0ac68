use thiserror::Error;

pub type Result<T, E = RenderError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("point ({0}, {1}, {2}) is not on the upper sheet")]
    WrongSheet(f64, f64, f64),

    #[error("discriminant {0} has the wrong sign for this projection")]
    WrongSign(f64),

    #[error("point ({0}, {1}, {2}) is off the hyperboloid with discriminant {3}")]
    OffSurface(f64, f64, f64, f64),

    #[error("homography has a pole at the given point")]
    Pole,

    #[error("model {model} does not support discriminant {delta}")]
    Unsupported { model: &'static str, delta: i64 },

    #[error("max_generation {0} exceeds the limit of 10")]
    GenerationTooLarge(u32),

    #[error(transparent)]
    Core(#[from] desitter_core::Error),
}
