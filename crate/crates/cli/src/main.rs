//! `qiep`: command-line front end for quat-iep.
//!
//! Exit codes: 0 success, 1 infeasible or unsolvable instance, 2 malformed
//! input (including a matrix that is not a generalized reflection).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quat_iep::approx::nearest_solution;
use quat_iep::factor::{pinv, penrose_residuals, reflection_eigenbasis, DEFAULT_RANK_TOL};
use quat_iep::inverse_eig::{generate_instance, partition, GeneralSolution, InstanceSpec};
use quat_iep::io::{read_matrix, write_matrix, ProblemFile};
use quat_iep::random::{random_matrix, seeded_rng};
use quat_iep::structures::{check_reflection, classify, split, DEFAULT_STRUCTURE_TOL};
use quat_iep::{Error, QuaternionMatrix, ReflectionPair, StructureClass};

#[derive(Parser)]
#[command(name = "qiep", version, about = "Generalized reflexive quaternion matrices and their inverse eigenproblem")]
struct Cli {
    /// Structural tolerance (reflection checks, classification, solvability).
    #[arg(long, global = true, default_value_t = DEFAULT_STRUCTURE_TOL)]
    tol: f64,
    /// Relative rank cutoff for the pseudoinverse.
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Reflexive,
    Antireflexive,
}

impl From<ClassArg> for StructureClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Reflexive => StructureClass::Reflexive,
            ClassArg::Antireflexive => StructureClass::Antireflexive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a generalized reflection and print the dimension of its +1 eigenspace.
    Check { p: PathBuf },
    /// Write the eigenbasis [U1, U2] of a generalized reflection.
    Eigenbasis {
        p: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print reflexive, antireflexive, neither or zero.
    Classify { a: PathBuf, p: PathBuf, q: PathBuf },
    /// Write the reflexive and antireflexive parts of A.
    Split {
        a: PathBuf,
        p: PathBuf,
        q: PathBuf,
        #[arg(short, long, num_args = 2, value_names = ["AR", "AA"], required = true)]
        output: Vec<PathBuf>,
    },
    /// Write the Moore-Penrose inverse and print the Penrose residuals.
    Pinv {
        a: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve AZ = ZΛ in the problem's class, using W1, W2 from the file or zero.
    SolveIep {
        problem: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the solution nearest to the problem's E.
    Approx {
        problem: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a random solvable problem with a random target E.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        r2: usize,
        /// Columns in block 1.
        #[arg(long)]
        k: usize,
        /// Total columns.
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InfeasibleStructure { .. } | Error::Unsolvable { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn read(path: &Path) -> quat_iep::Result<QuaternionMatrix> {
    read_matrix(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn read_pair(p: &Path, q: &Path, tol: f64) -> quat_iep::Result<ReflectionPair> {
    ReflectionPair::new(read(p)?, read(q)?, tol)
}

fn load_problem(path: &Path, tol: f64) -> quat_iep::Result<(ProblemFile, ReflectionPair, StructureClass)> {
    let file = ProblemFile::load(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let pair = ReflectionPair::new(file.p.to_matrix()?, file.q.to_matrix()?, tol)?;
    let class = file.class()?;
    Ok((file, pair, class))
}

fn optional(m: &Option<quat_iep::io::MatrixFile>, shape: (usize, usize), name: &str) -> quat_iep::Result<QuaternionMatrix> {
    match m {
        None => Ok(QuaternionMatrix::zeros(shape.0, shape.1)),
        Some(f) => {
            let w = f.to_matrix()?;
            if w.shape() != shape {
                return Err(Error::Format(format!(
                    "{name} is {}x{}, expected {}x{}",
                    w.rows(),
                    w.cols(),
                    shape.0,
                    shape.1
                )));
            }
            Ok(w)
        }
    }
}

fn run(cli: &Cli) -> quat_iep::Result<()> {
    let tol = cli.tol;
    match &cli.command {
        Command::Check { p } => {
            let p = read(p)?;
            check_reflection(&p, tol).map_err(|defect| Error::InvalidReflection { name: "P", defect })?;
            let (u1, _) = reflection_eigenbasis(&p, tol)?;
            println!("r1 = {}", u1.rank());
        }
        Command::Eigenbasis { p, output } => {
            let (u1, u2) = reflection_eigenbasis(&read(p)?, tol)?;
            write_matrix(output, &u1.matrix().hstack(u2.matrix())?)?;
            println!("r1 = {}", u1.rank());
        }
        Command::Classify { a, p, q } => {
            let pair = read_pair(p, q, tol)?;
            println!("{}", classify(&read(a)?, &pair, tol)?);
        }
        Command::Split { a, p, q, output } => {
            let pair = read_pair(p, q, tol)?;
            let (ar, aa) = split(&read(a)?, &pair)?;
            write_matrix(&output[0], &ar)?;
            write_matrix(&output[1], &aa)?;
            println!("reflexive part norm = {:e}", ar.fro_norm());
            println!("antireflexive part norm = {:e}", aa.fro_norm());
        }
        Command::Pinv { a, output } => {
            let a = read(a)?;
            let x = pinv(&a, cli.rank_tol);
            write_matrix(output, &x)?;
            let [r1, r2, r3, r4] = penrose_residuals(&a, &x);
            println!("||AXA - A|| = {r1:e}");
            println!("||XAX - X|| = {r2:e}");
            println!("||(AX)* - AX|| = {r3:e}");
            println!("||(XA)* - XA|| = {r4:e}");
        }
        Command::SolveIep { problem, output } => {
            let (file, pair, class) = load_problem(problem, tol)?;
            let data = file.spectral_data()?;
            let part = partition(&data, &pair, class, tol)?;
            let sol = GeneralSolution::new(&part, &pair)?;
            let w1 = optional(&file.w1, sol.w1_shape(), "W1")?;
            let w2 = optional(&file.w2, sol.w2_shape(), "W2")?;
            let a = sol.materialize(&w1, &w2)?;
            write_matrix(output, &a)?;
            println!("class = {class}");
            println!("block widths = {}, {}", part.k, part.m() - part.k);
            println!("||AZ - Z Lambda|| = {:e}", data.residual(&a)?);
            let op = if class.sign() > 0.0 { '-' } else { '+' };
            println!("||A {op} PAQ|| = {:e}", class.identity_residual(&a, &pair)?);
        }
        Command::Approx { problem, output } => {
            let (file, pair, class) = load_problem(problem, tol)?;
            let data = file.spectral_data()?;
            let e = match &file.e {
                Some(e) => e.to_matrix()?,
                None => return Err(Error::Format("problem file has no target E".into())),
            };
            let part = partition(&data, &pair, class, tol)?;
            let best = nearest_solution(&e, &part, &pair)?;
            write_matrix(output, &best.minimizer)?;
            let b = best.block_residuals;
            println!("class = {class}");
            println!("distance = {:e}", best.distance);
            println!("block residuals (squared) = {:e} {:e} {:e} {:e}", b.b11, b.b12, b.b21, b.b22);
            println!("||AZ - Z Lambda|| = {:e}", data.residual(&best.minimizer)?);
        }
        Command::Gen { n, r1, r2, k, m, class, seed, output } => {
            let spec = InstanceSpec {
                n: *n,
                r1: *r1,
                r2: *r2,
                k: *k,
                m: *m,
                class: (*class).into(),
                seed: *seed,
            };
            let (pair, data) = generate_instance(&spec)?;
            let mut file = ProblemFile::new(pair.p(), pair.q(), &data, spec.class);
            let e = random_matrix(&mut seeded_rng(seed.wrapping_add(1)), *n, *n);
            file.e = Some((&e).into());
            file.save(output)?;
        }
    }
    Ok(())
}
