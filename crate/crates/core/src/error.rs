use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("arc {arc} appears {count} times in the crossing list (expected 2)")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("arc {arc} appears only once: open strand")]
    OpenStrand { arc: u32 },
    #[error("seam entry references unknown arc {0}")]
    SeamUnknownArc(u32),
    #[error("seam entry references unknown free loop {0}")]
    SeamUnknownLoop(usize),
    #[error("arc {0} crosses the seam more than once")]
    SeamRepeated(u32),
    #[error("free loop {index}: winding {winding} disagrees with its seam entries")]
    LoopSeamMismatch { index: usize, winding: i32 },
    #[error("circle with winding {winding} in resolution {vertex:?}; embedded circles wind at most once")]
    WindingOutOfRange { vertex: Vec<u8>, winding: i32 },
    #[error("expected {expected} orientation flags, got {got}")]
    OrientationCount { expected: usize, got: usize },
    #[error("crossing data does not describe a planar diagram")]
    NonPlanar,
    #[error("smoothing vector has length {got}, diagram has {expected} crossings")]
    LengthMismatch { expected: usize, got: usize },
    #[error("resolutions are not adjacent in the cube")]
    NotAdjacent,
    #[error("flavor requires {0}")]
    FlavorMismatch(&'static str),
    #[error("{crossings} crossings exceed the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },
    #[error("resolution has {0} circles, more than the supported 32")]
    TooManyCircles(usize),
    #[error("annular TQFT has no rule for this {0}")]
    BadCobordism(&'static str),
    #[error("span(B) is not contained in span(Z)")]
    NotContained,
    #[error("graph is not a forest: {0}")]
    NotAForest(String),
    #[error("no planar layout found for the marked forest")]
    LayoutFailed,
    #[error("malformed label string {0:?}")]
    BadLabel(String),
    #[error("diagram carries no crossing partition")]
    PartitionMissing,
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("d∘d ≠ 0 in {0}")]
    NotAComplex(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
