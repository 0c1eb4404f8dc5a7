use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Subcommand};

use revoflow::hcurve::io::save_curve;
use revoflow::{generate, Curve, CurveShape, CurveSpec};

use crate::svg;

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    shape: Shape,
    /// Node count; the per-shape default when omitted.
    #[arg(short, long, global = true)]
    n: Option<usize>,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Also write `<output>.svg`.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Shape {
    /// Circle of radius `rho` centred at `(x0, c)`.
    Circle {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
    },
    /// Circle of conformal class `b`.
    Class {
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
    },
    /// Clifford circle with a radial cosine perturbation.
    Perturbed {
        #[arg(long)]
        amplitude: f64,
        #[arg(long)]
        mode: u32,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = 0.0)]
        x0: f64,
    },
    /// Figure-eight of turning number zero.
    FigureEight {
        #[arg(long)]
        height: f64,
        #[arg(long)]
        width: f64,
        #[arg(long)]
        lobe: f64,
    },
}

impl From<&Shape> for CurveShape {
    fn from(s: &Shape) -> Self {
        match *s {
            Shape::Circle { c, rho, x0 } => CurveShape::Circle { c, rho, x0 },
            Shape::Class { b, scale, x0 } => CurveShape::CircleByClass { b, scale, x0 },
            Shape::Perturbed {
                amplitude,
                mode,
                scale,
                x0,
            } => CurveShape::PerturbedClifford {
                amplitude,
                mode,
                scale,
                x0,
            },
            Shape::FigureEight {
                height,
                width,
                lobe,
            } => CurveShape::FigureEight {
                height,
                width,
                lobe,
            },
        }
    }
}

pub fn run(args: &GenArgs) -> Result<()> {
    let spec = CurveSpec {
        shape: (&args.shape).into(),
        n: args.n,
    };
    let curve: Curve = generate(&spec)?;
    let Some(out) = &args.output else {
        print!("{}", revoflow::hcurve::io::format_curve(&curve));
        return Ok(());
    };
    save_curve(out, &curve)?;
    if args.svg {
        let p = out.with_extension("svg");
        std::fs::write(&p, svg::render(&[&curve]))
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}
