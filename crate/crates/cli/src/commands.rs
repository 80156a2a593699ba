//! One function per subcommand. Each returns the report, the frame document
//! it produced (if any) and the exit status.

use gfusion_core::engine::{
    canonical_dual, checked_condition, delete_member, frame_bounds, frame_operator, gf_rank,
    injectivity_check, parsevalize, range_space_bounds, synthesis_matrix, transform_frame,
    SequenceBounds,
};
use gfusion_core::generators::{random_frame, GeneratorSpec};
use gfusion_core::io::{parse_frame, parse_matrix, serialize_frame};
use gfusion_core::kernel::{self, identity};
use gfusion_core::{Error, FrameBounds, GFusionFrame, Tolerance};
use sha2::{Digest, Sha256};

use crate::report::{Field, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_A_FRAME: i32 = 2;
pub const EXIT_CONDITIONING: i32 = 3;

pub struct Outcome {
    pub report: Report,
    pub frame: Option<Vec<u8>>,
    pub exit: i32,
}

/// Failure before a report could be produced.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::NotAFrame { .. } => EXIT_NOT_A_FRAME,
            Error::IllConditioned { .. } => EXIT_CONDITIONING,
            _ => EXIT_INPUT,
        };
        Failure {
            message: e.to_string(),
            exit,
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_input(path: &str) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure {
        message: format!("{path}: {e}"),
        exit: EXIT_INPUT,
    })
}

fn bounds_group(b: &FrameBounds) -> Field {
    Field::Group(vec![("lower", Field::Num(b.lower)), ("upper", Field::Num(b.upper))])
}

fn sequence_group(s: &SequenceBounds) -> Field {
    Field::Group(vec![
        ("dim", Field::Int(s.dim)),
        ("lower", Field::Num(s.bounds.lower)),
        ("upper", Field::Num(s.bounds.upper)),
        ("is_frame_sequence", Field::Bool(s.is_frame_sequence)),
    ])
}

fn load(bytes: &[u8], tol: &Tolerance) -> Result<GFusionFrame, Failure> {
    Ok(parse_frame(bytes, tol)?)
}

pub fn analyze(bytes: &[u8], tol: Tolerance) -> CmdResult {
    let frame = load(bytes, &tol)?;
    let report = frame_bounds(&frame, &tol)?;
    let spectrum = kernel::eigh(&frame_operator(&frame))?;
    let sequence = range_space_bounds(&frame, &tol)?;
    let injective = injectivity_check(&frame, &tol)?.injective;
    let results = vec![
        ("ambient_dim", Field::Int(frame.ambient_dim())),
        ("members", Field::Int(frame.len())),
        ("bounds", bounds_group(&report.bounds)),
        ("condition", Field::Num(report.frame_operator_condition)),
        ("is_bessel", Field::Bool(report.is_bessel)),
        ("is_frame", Field::Bool(report.is_frame)),
        ("is_parseval", Field::Bool(report.is_parseval)),
        ("is_gf_complete", Field::Bool(report.is_gf_complete)),
        ("analysis_injective", Field::Bool(injective)),
        ("gf_rank", Field::Int(gf_rank(&frame, &tol)?)),
        ("sequence", sequence_group(&sequence)),
        ("spectrum", Field::Nums(spectrum.eigenvalues)),
    ];
    Ok(Outcome {
        report: Report {
            command: "analyze",
            input_digest: digest(bytes),
            tolerance: tol,
            results,
        },
        frame: None,
        exit: if report.is_frame { EXIT_OK } else { EXIT_NOT_A_FRAME },
    })
}

pub fn dual(bytes: &[u8], tol: Tolerance) -> CmdResult {
    let frame = load(bytes, &tol)?;
    let cond = checked_condition(&frame, &tol)?;
    let dual = canonical_dual(&frame, &tol)?;
    let s_dual = frame_operator(&dual.frame);
    let operator_residual = kernel::op_norm(&(&s_dual - &dual.s_inverse));
    let n = frame.ambient_dim();
    let product = synthesis_matrix(&frame) * synthesis_matrix(&dual.frame).adjoint();
    let product_residual = kernel::op_norm(&(product - identity(n)));
    let bounds = frame_bounds(&dual.frame, &tol)?.bounds;
    let results = vec![
        ("condition", Field::Num(cond)),
        ("dual_bounds", bounds_group(&bounds)),
        ("dual_operator_residual", Field::Residual(operator_residual)),
        ("synthesis_product_residual", Field::Residual(product_residual)),
    ];
    Ok(Outcome {
        report: Report {
            command: "dual",
            input_digest: digest(bytes),
            tolerance: tol,
            results,
        },
        frame: Some(serialize_frame(&dual.frame)),
        exit: EXIT_OK,
    })
}

pub fn parsevalize_cmd(bytes: &[u8], tol: Tolerance) -> CmdResult {
    let frame = load(bytes, &tol)?;
    let cond = checked_condition(&frame, &tol)?;
    let parseval = parsevalize(&frame, &tol)?;
    let residual = kernel::op_norm(&(frame_operator(&parseval) - identity(frame.ambient_dim())));
    let bounds = frame_bounds(&parseval, &tol)?.bounds;
    let results = vec![
        ("condition", Field::Num(cond)),
        ("bounds", bounds_group(&bounds)),
        ("identity_residual", Field::Residual(residual)),
    ];
    Ok(Outcome {
        report: Report {
            command: "parsevalize",
            input_digest: digest(bytes),
            tolerance: tol,
            results,
        },
        frame: Some(serialize_frame(&parseval)),
        exit: EXIT_OK,
    })
}

pub fn remove(bytes: &[u8], index: usize, tol: Tolerance) -> CmdResult {
    let frame = load(bytes, &tol)?;
    let r = delete_member(&frame, index, &tol)?;
    let results = vec![
        ("removed_index", Field::Int(r.removed_index)),
        ("cond1_holds", Field::Bool(r.cond1_holds)),
        ("cond2_holds", Field::Bool(r.cond2_holds)),
        ("cond3_holds", Field::Bool(r.cond3_holds)),
        ("remaining_bounds", bounds_group(&r.remaining_bounds)),
        ("remaining_rank", Field::Int(r.remaining_rank)),
        ("remaining_gf_complete", Field::Bool(r.remaining_gf_complete)),
        ("remaining_is_frame", Field::Bool(r.remaining_is_frame)),
    ];
    Ok(Outcome {
        report: Report {
            command: "remove",
            input_digest: digest(bytes),
            tolerance: tol,
            results,
        },
        frame: None,
        exit: if r.remaining_is_frame { EXIT_OK } else { EXIT_NOT_A_FRAME },
    })
}

pub fn transform(bytes: &[u8], operator: &[u8], tol: Tolerance) -> CmdResult {
    let frame = load(bytes, &tol)?;
    let u = parse_matrix(operator)?;
    let (image, diag) = transform_frame(&frame, &u, &tol)?;
    let report = frame_bounds(&image, &tol)?;
    let results = vec![
        ("operator_digest", Field::Text(digest(operator))),
        ("singular_values", Field::Nums(diag.singular_values)),
        ("rank", Field::Int(diag.rank)),
        ("bounds", bounds_group(&report.bounds)),
        ("is_frame", Field::Bool(report.is_frame)),
        ("sequence", sequence_group(&diag.sequence)),
        ("identity_residual", Field::Residual(diag.identity_residual)),
    ];
    Ok(Outcome {
        report: Report {
            command: "transform",
            input_digest: digest(bytes),
            tolerance: tol,
            results,
        },
        frame: Some(serialize_frame(&image)),
        exit: EXIT_OK,
    })
}

/// `spec_bytes` is the spec file, or the canonical JSON of the spec built
/// from flags; it is what the digest covers.
pub fn generate(spec: &GeneratorSpec, spec_bytes: &[u8], tol: Tolerance) -> CmdResult {
    let frame = random_frame(spec)?;
    let report = frame_bounds(&frame, &tol)?;
    let results = vec![
        ("seed", Field::Text(spec.seed.to_string())),
        ("ambient_dim", Field::Int(frame.ambient_dim())),
        ("members", Field::Int(frame.len())),
        ("bounds", bounds_group(&report.bounds)),
        ("is_frame", Field::Bool(report.is_frame)),
    ];
    Ok(Outcome {
        report: Report {
            command: "generate",
            input_digest: digest(spec_bytes),
            tolerance: tol,
            results,
        },
        frame: Some(serialize_frame(&frame)),
        exit: EXIT_OK,
    })
}
