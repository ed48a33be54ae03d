use std::path::PathBuf;
use std::process::ExitCode;

use barcof::commands::{self, ApproxArgs, Exit, HocolimArgs, Output};
use barcof::format::to_json;
use barcof_core::verify::VerifyConfig;
use barcof_core::DEFAULT_BUDGET;
use clap::{Parser, Subcommand};

/// Homotopy colimits and bar cofibrant approximations of finite diagrams of
/// simplicial sets.
///
/// Exit status: 0 ok, 1 a check failed, 2 bad input, 3 a dimension cap or
/// search budget was exceeded.
#[derive(Parser, Debug)]
#[command(name = "barcof", version)]
struct Cli {
    /// Write each result document into this directory instead of printing
    /// them to stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check category, simplicial set and diagram files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Homotopy colimit of a diagram, with its homology.
    Hocolim {
        #[arg(long, value_name = "FILE")]
        diagram: PathBuf,
        /// Also compute the bar L-colimit.
        #[arg(long)]
        lcolim: bool,
        /// Also build the comparison isomorphism L colim → hocolim.
        #[arg(long)]
        compare: bool,
        /// Dimension cap for nerves of categories with loops.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
    },
    /// Bar cofibrant approximation relative to a full subcategory.
    Approx {
        #[arg(long, value_name = "FILE")]
        diagram: PathBuf,
        /// Objects of the full subcategory, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        subcat: Vec<String>,
        /// Use the variant built from nerves without opposites.
        #[arg(long)]
        nat: bool,
        /// Highest homology degree compared.
        #[arg(long, value_name = "N", default_value_t = 3)]
        up_to: usize,
    },
    /// Run a verification suite over the built-in corpus.
    Verify {
        /// skeleton, theta, lambda, approx, adjunction, comparison, nat-variant,
        /// topology, structure or all
        suite: String,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
}

fn emit(out: &Output, dir: Option<&PathBuf>) -> std::io::Result<()> {
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (name, value) in &out.files {
                std::fs::write(dir.join(name), to_json(value))?;
            }
            for line in &out.summary {
                println!("{line}");
            }
        }
        None => {
            let docs: serde_json::Map<String, serde_json::Value> = out.files.iter().cloned().collect();
            if !docs.is_empty() {
                print!("{}", to_json(&docs));
            }
            for line in &out.summary {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::InputError as u8 } else { 0 });
        }
    };
    let output = match &cli.command {
        Command::Validate { files } => commands::validate(files),
        Command::Hocolim { diagram, lcolim, compare, cap } => commands::hocolim_cmd(&HocolimArgs {
            diagram,
            lcolim: *lcolim,
            compare: *compare,
            cap: cap.map(|c| c as usize),
        }),
        Command::Approx { diagram, subcat, nat, up_to } => commands::approx_cmd(&ApproxArgs {
            diagram,
            subcat,
            nat: *nat,
            up_to: *up_to,
        }),
        Command::Verify { suite, cap, budget } => commands::verify_cmd(
            suite,
            &VerifyConfig {
                cap: cap.map(|c| c as usize),
                budget: *budget as usize,
                ..VerifyConfig::default()
            },
        ),
    };
    if let Err(e) = emit(&output, cli.out.as_ref()) {
        eprintln!("error: cannot write results: {e}");
        return ExitCode::from(Exit::InputError as u8);
    }
    ExitCode::from(output.exit as u8)
}
