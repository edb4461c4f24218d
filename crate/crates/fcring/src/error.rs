//! Error types for ring validation, structure analysis and model files.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // ---- fusion tensor validation ----
    #[error("negative fusion coefficient at N[{p}][{q}][{r}]")]
    NegativeEntry { p: usize, q: usize, r: usize },

    #[error("vacuum is not a unit: N[0][{q}][{r}] = {value}, expected {expected}")]
    UnitViolation {
        q: usize,
        r: usize,
        value: i64,
        expected: i64,
    },

    #[error("fusion is not commutative: N[{p}][{q}][{r}] = {left} but N[{q}][{p}][{r}] = {right}")]
    CommutativityViolation {
        p: usize,
        q: usize,
        r: usize,
        left: i64,
        right: i64,
    },

    #[error("fusion is not associative at (p,q,r,t) = ({p},{q},{r},{t}): {left} vs {right}")]
    AssociativityViolation {
        p: usize,
        q: usize,
        r: usize,
        t: usize,
        left: i64,
        right: i64,
    },

    #[error("conjugation failure at primary {p}: {detail}")]
    ConjugationViolation { p: usize, detail: String },

    #[error("S-matrix invalid: {detail}")]
    SMatrixViolation { detail: String },

    #[error("S-matrix inconsistent with the fusion rules: {detail}")]
    SMatrixInconsistent { detail: String },

    #[error("ring has more than {max} primaries (n = {n})", max = crate::set::MAX_PRIMARIES)]
    TooManyPrimaries { n: usize },

    // ---- character computation ----
    #[error("failed to separate joint eigenspaces after {attempts} attempts")]
    DegenerateSpectrum { attempts: usize },

    #[error("spectral computation failed: {detail}")]
    SpectralFailure { detail: String },

    #[error("no consistent assignment of characters to primaries: {detail}")]
    AttachmentFailure { detail: String },

    // ---- class / block structure ----
    #[error(
        "primaries {p} and {q} are neither clearly equal nor clearly distinct on the \
         restricted characters (distance {distance:.3e}); adjust the tolerance"
    )]
    ToleranceAmbiguity { p: usize, q: usize, distance: f64 },

    #[error("block partition disagrees with the classes of the dual on {detail}")]
    BlockClassMismatch { detail: String },

    #[error("overlap routes disagree for block {block} and class {class}: {via_smatrix} vs {via_multiplicity}")]
    OverlapMismatch {
        block: usize,
        class: usize,
        via_smatrix: f64,
        via_multiplicity: f64,
    },

    #[error("overlap of block {block} and class {class} is not an integer: {value}")]
    NonIntegralOverlap {
        block: usize,
        class: usize,
        value: f64,
    },

    // ---- lattice ----
    #[error("join formulas disagree for {g:?} and {h:?}: via duals {via_duals:?}, via closure {via_closure:?}")]
    JoinFormulaMismatch {
        g: String,
        h: String,
        via_duals: String,
        via_closure: String,
    },

    #[error("lattice would exceed the size cap of {cap} elements")]
    LatticeTooLarge { cap: usize },

    // ---- center / extensions ----
    #[error("extent and character criteria disagree on centrality of class {class}: {detail}")]
    CenterCriteriaMismatch { class: usize, detail: String },

    #[error("central action is ill-defined: {detail}")]
    IllDefinedAction { detail: String },

    #[error("abelian criteria disagree: {detail}")]
    AbelianCriteriaMismatch { detail: String },

    #[error("the given classes do not form a subgroup of the center: {detail}")]
    NotASubgroup { detail: String },

    #[error("no central subgroup isomorphic to the requested group {spec:?}")]
    NoSuchExtension { spec: Vec<u64> },

    // ---- locality ----
    #[error("locality criteria disagree for {g}: inclusion says {via_inclusion}, refinement says {via_refinement}")]
    LocalityCriteriaMismatch {
        g: String,
        via_inclusion: bool,
        via_refinement: bool,
    },

    #[error("conformal weights are required for this operation")]
    MissingWeights,

    #[error("no Ramond class found for the local non-twister {g}")]
    NoRamondClass { g: String },

    #[error("multiple Ramond candidates for {g}: classes {candidates:?}")]
    AmbiguousRamondClass { g: String, candidates: Vec<usize> },

    #[error("divisibility check requested on non-integral quantities: {detail}")]
    NonIntegralInputs { detail: String },

    // ---- misc contract violations ----
    #[error("{0}")]
    Precondition(String),

    // ---- model files ----
    #[error("syntax error in model file: {msg}")]
    Syntax { msg: String },

    #[error("model field out of range: {detail}")]
    Range { detail: String },

    #[error("duplicate fusion entry for (p,q,r) = ({p},{q},{r})")]
    DuplicateEntry { p: usize, q: usize, r: usize },

    #[error("unknown bundled model {name:?}")]
    UnknownModel { name: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code classification. Code 2 covers bad input (axiom or file
    /// violations), code 3 covers breaches of invariants the theory
    /// guarantees, which indicate corrupted input or a tolerance problem.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            NegativeEntry { .. }
            | UnitViolation { .. }
            | CommutativityViolation { .. }
            | AssociativityViolation { .. }
            | ConjugationViolation { .. }
            | SMatrixViolation { .. }
            | TooManyPrimaries { .. }
            | Syntax { .. }
            | Range { .. }
            | DuplicateEntry { .. }
            | UnknownModel { .. }
            | MissingWeights
            | NotASubgroup { .. }
            | NoSuchExtension { .. }
            | Precondition(_)
            | Io(_) => 2,
            _ => 3,
        }
    }

    /// Stable identifier used in machine-readable error tails.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            NegativeEntry { .. } => "NegativeEntry",
            UnitViolation { .. } => "UnitViolation",
            CommutativityViolation { .. } => "CommutativityViolation",
            AssociativityViolation { .. } => "AssociativityViolation",
            ConjugationViolation { .. } => "ConjugationViolation",
            SMatrixViolation { .. } => "SMatrixViolation",
            SMatrixInconsistent { .. } => "SMatrixInconsistent",
            TooManyPrimaries { .. } => "TooManyPrimaries",
            DegenerateSpectrum { .. } => "DegenerateSpectrum",
            SpectralFailure { .. } => "SpectralFailure",
            AttachmentFailure { .. } => "AttachmentFailure",
            ToleranceAmbiguity { .. } => "ToleranceAmbiguity",
            BlockClassMismatch { .. } => "BlockClassMismatch",
            OverlapMismatch { .. } => "OverlapMismatch",
            NonIntegralOverlap { .. } => "NonIntegralOverlap",
            JoinFormulaMismatch { .. } => "JoinFormulaMismatch",
            LatticeTooLarge { .. } => "LatticeTooLarge",
            CenterCriteriaMismatch { .. } => "CenterCriteriaMismatch",
            IllDefinedAction { .. } => "IllDefinedAction",
            AbelianCriteriaMismatch { .. } => "AbelianCriteriaMismatch",
            NotASubgroup { .. } => "NotASubgroup",
            NoSuchExtension { .. } => "NoSuchExtension",
            LocalityCriteriaMismatch { .. } => "LocalityCriteriaMismatch",
            MissingWeights => "MissingWeights",
            NoRamondClass { .. } => "NoRamondClass",
            AmbiguousRamondClass { .. } => "AmbiguousRamondClass",
            NonIntegralInputs { .. } => "NonIntegralInputs",
            Precondition(_) => "Precondition",
            Syntax { .. } => "SyntaxError",
            Range { .. } => "RangeError",
            DuplicateEntry { .. } => "DuplicateEntry",
            UnknownModel { .. } => "UnknownModel",
            Io(_) => "Io",
        }
    }
}
