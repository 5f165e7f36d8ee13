use clap::Parser;

fn main() {
    let cli = gradecat_cli::Cli::parse();
    let out = gradecat_cli::run(&cli);
    print!("{}", out.text);
    std::process::exit(out.exit_code);
}
