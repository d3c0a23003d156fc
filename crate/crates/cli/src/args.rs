use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "knotfield", version, about = "Lemniscate knot fields: construction, invariants and numerical certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact semiholomorphic field f(u, v, v̄) and its spatial form F(x, y, z)
    Generate(GenerateArgs),
    /// Braid word, crossing signs and invariant predictions
    Braid(BraidArgs),
    /// Nodal-set certificate on S³, recovered word and fibration scan
    Verify(VerifyArgs),
    /// Alexander polynomial and the checks attached to it
    Invariants(BraidArgs),
    /// Hopfion initial data W = c v^N / f^m and its measured charge
    Hopfion(HopfionArgs),
    /// Real polynomial with the link on small spheres, certified at several radii
    Milnor(MilnorArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Named construction: fig8, f5r2, f4r3, cable-13n4587, fig8hopf-paper, borromean
    #[arg(long)]
    pub preset: Option<String>,
    /// Number of strands
    #[arg(long = "s")]
    pub s: Option<u32>,
    /// Number of repeats of the basic pattern
    #[arg(long = "r")]
    pub r: Option<u32>,
    /// Lissajous lobe parameter ℓ
    #[arg(long = "l")]
    pub l: Option<u32>,
    /// Horizontal amplitude (p/q or decimal)
    #[arg(long, default_value = "1")]
    pub a: String,
    /// Vertical amplitude (p/q or decimal)
    #[arg(long, default_value = "1")]
    pub b: String,
    /// Stretching factor λ [default: 1 for ℓ ≤ 2, 1/2 for ℓ = 3, threshold search for ℓ ≥ 4]
    #[arg(long)]
    pub lambda: Option<String>,
    /// Number of full rotations appended to the braid
    #[arg(long = "n-rot", default_value_t = 0, allow_hyphen_values = true)]
    pub n_rot: i64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output path, `-` for standard output
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Samples of h ∈ [0, 2π] for root tracking (refined automatically)
    #[arg(long, default_value_t = 4096)]
    pub h_steps: usize,
    /// Quasi-random S³ samples for the fibration scan
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    /// Radius of the tube around the nodal set excluded from the scan
    #[arg(long, default_value_t = 0.05)]
    pub tube: f64,
    /// Relative root residual tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub root_residual: f64,
    /// Transversality tolerance
    #[arg(long, default_value_t = 1e-6)]
    pub transversality: f64,
    /// Curve closure tolerance
    #[arg(long, default_value_t = 1e-6)]
    pub closure: f64,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Skip the spatial polynomial F(x, y, z)
    #[arg(long)]
    pub no_spatial: bool,
}

#[derive(Args, Debug)]
pub struct BraidArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Skip the fibration scan
    #[arg(long)]
    pub no_scan: bool,
    /// Also run the λ threshold search up to this value
    #[arg(long)]
    pub search_lambda: Option<f64>,
    /// Write the nodal curve on S³ as CSV (index,x,y,z,w)
    #[arg(long)]
    pub curve_out: Option<String>,
}

#[derive(Args, Debug)]
pub struct HopfionArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Power of v in the numerator
    #[arg(long = "N", default_value_t = 1)]
    pub n: u32,
    /// Multiplicity of the denominator
    #[arg(long = "m", default_value_t = 1)]
    pub m: u32,
    /// Numerator constant c [default: 64 for fig8hopf-paper, else 1]
    #[arg(long)]
    pub c: Option<String>,
    /// Width w of the profile d(r) = 4 arctan(e^{-r/w})
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Seed-scan grid cells per axis
    #[arg(long, default_value_t = 96)]
    pub grid: usize,
    /// Half-width of the box
    #[arg(long = "box", default_value_t = 6.0)]
    pub half_width: f64,
    /// Second preimage target on S² as x,y,z (the first is the south pole)
    #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
    pub target: String,
    /// Write φ on a uniform grid as CSV (x,y,z,phi1,phi2,phi3)
    #[arg(long)]
    pub export: Option<String>,
    /// Points per axis of the exported grid
    #[arg(long, default_value_t = 32)]
    pub export_grid: usize,
    /// Write both preimage families as CSV (index,x,y,z)
    #[arg(long)]
    pub curves_out: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MilnorArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Brauner torus map u^p - v^q given as p,q
    #[arg(long)]
    pub brauner: Option<String>,
    /// Sphere radii
    #[arg(long, default_value = "0.1,0.05,0.01", value_delimiter = ',')]
    pub radii: Vec<f64>,
    #[arg(long, default_value_t = 4096)]
    pub h_steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
