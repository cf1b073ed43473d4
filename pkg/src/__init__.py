import typer

from .dynamics.routes import simulate_trajectory
from .experiments.routes import solve, sweep
from .fixed_points.routes import analyze
from .ising.routes import info
from .middleware import register_middleware
from .verification.routes import verify

version = "v1"

app = typer.Typer(
    name="oimlab",
    help="Oscillator Ising machine dynamics, fixed points and stability analysis.",
    add_completion=False,
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)

register_middleware(app)


app.command("info")(info)
app.command("analyze")(analyze)
app.command("sweep")(sweep)
app.command("solve")(solve)
app.command("verify")(verify)
app.command("simulate-trajectory")(simulate_trajectory)


def main():
    app(prog_name="oimlab")
