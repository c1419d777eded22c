//! The `hilbk3` command.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbk3_cli::cache::Cache;
use hilbk3_cli::commands::{self, exit_code, EXIT_USAGE};
use hilbk3_cli::config::{self, Layer};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact generating series for curve counts on Hilbert schemes of points of K3 surfaces.
#[derive(Parser, Debug)]
#[command(name = "hilbk3", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by all commands. Unset flags fall back to `HILBK3_*` environment variables,
/// then to the configuration file, then to the defaults.
#[derive(Args, Debug)]
struct Global {
    /// Highest q-power of emitted series [default: 5].
    #[arg(long, global = true)]
    qmax: Option<i64>,
    /// Order in w of holomorphy tests [default: 8].
    #[arg(long, global = true)]
    worder: Option<i64>,
    /// Surface model: k3-rank24 or small [default: k3-rank24].
    #[arg(long, global = true)]
    model: Option<String>,
    /// Pair selection of the operator WDVV check at d = 3: full or sampled [default: sampled].
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Output format [default: pretty].
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Cache directory; caching is off when unset.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Configuration file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a generator (F, K, J1, wp, wp_prime, E2, E4, E6, ..., G, Delta, eta, theta1, Theta_D4, J2_n, J3_n, G_n).
    Expand {
        /// Generator name.
        name: String,
    },
    /// Solve the WDVV recursion or verify it against the closed forms.
    Wdvv {
        #[arg(value_enum)]
        action: WdvvAction,
        /// k-window of the top row.
        #[arg(long, default_value_t = 14)]
        kwindow: i64,
    },
    /// The two-point bracket of two Nakajima monomials, e.g. "p(-2,w) 1" "p(-1,F) p(-1,e) 1".
    Bracket {
        /// First monomial.
        mu: String,
        /// Second monomial.
        nu: String,
        /// Also fit Delta times the bracket as a quasi-Jacobi form.
        #[arg(long)]
        fit: bool,
    },
    /// Run acceptance suites by name or number (default: all).
    Verify {
        /// Suites: all, yz, theta, diff, wdvv, phi, conj-a, hilb2, worked, genus1, table1, a1, qjac.
        suites: Vec<String>,
        /// Include the long-running parts.
        #[arg(long)]
        long: bool,
        /// Largest h of the hyperelliptic table without --long.
        #[arg(long, default_value_t = 10)]
        hmax: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WdvvAction {
    Solve,
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let flags = Layer {
        q_max: g.qmax,
        w_order: g.worder,
        surface_model: g.model.clone(),
        conj_a_mode: g.mode.clone(),
        cache_dir: g.cache_dir.clone(),
        output: g.format.map(|f| format!("{f:?}").to_lowercase()),
    };
    let cfg = match config::load(flags, g.config.as_deref(), |k| std::env::var(k).ok()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let cache = Cache::new(cfg.cache_dir.clone());
    let result = match &cli.command {
        Command::Expand { name } => commands::cmd_expand(&cfg, &cache, name),
        Command::Wdvv { action, kwindow } => {
            let a = match action {
                WdvvAction::Solve => "solve",
                WdvvAction::Verify => "verify",
            };
            commands::cmd_wdvv(&cfg, a, *kwindow)
        }
        Command::Bracket { mu, nu, fit } => commands::cmd_bracket(&cfg, &cache, mu, nu, *fit),
        Command::Verify { suites, long, hmax } => commands::cmd_verify(&cfg, suites, *long, *hmax),
    };
    match result {
        Ok(e) => {
            print!("{}", e.text);
            ExitCode::from(e.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
