"""Terminal rendering of codes, decodes and experiment results using Rich."""

from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..models.noise import McResult, SweepReport
from ..models.operator import DecodeResult, OracleCall
from ..simulation.invariants import PropertyResult


def _bits(values: Sequence[int]) -> str:
    return "".join(str(v) for v in values)


class ResultDisplay:
    """Handles all output of the command line.

    Args:
        console: Console to print to (stdout by default)
    """

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()
        self.verdict_styles = {True: "bold green", False: "bold red"}

    def show_message(self, message: str, style: str = "white") -> None:
        self.console.print(message, style=style)

    def show_error(self, error: str) -> None:
        """Display an error message.

        Args:
            error: Error message to display
        """
        self.console.print(f"error: {error}", style="bold red", markup=False)

    def show_success(self, message: str) -> None:
        self.console.print(message, style="bold green")

    def show_code_summary(self, summary: Dict[str, Any]) -> None:
        """Display the parameters of a hypergraph product code.

        Args:
            summary: Output of ``code_summary``
        """
        table = Table(show_header=False, box=None)
        table.add_column("Field", style="cyan")
        table.add_column("Value", style="white")
        d_x = "?" if summary["d_x"] is None else summary["d_x"]
        d_z = "?" if summary["d_z"] is None else summary["d_z"]
        table.add_row("parameters", f"[[{summary['n']}, {summary['k']}, {d_x}, {d_z}]]")
        table.add_row("seed A", f"{summary['seed_a']['rows']} x {summary['seed_a']['cols']}")
        table.add_row("seed B", f"{summary['seed_b']['rows']} x {summary['seed_b']['cols']}")
        table.add_row("X / Z stabilizers", f"{summary['x_stabilizers']} / {summary['z_stabilizers']}")
        table.add_row("logical Z (left + right)", f"{summary['logical_z_left']} + {summary['logical_z_right']}")
        self.console.print(Panel(table, title=summary["label"], border_style="cyan"))

    def show_trace(self, trace: Sequence[OracleCall]) -> None:
        """List every classical oracle call of a decode."""
        if not trace:
            self.show_message("No oracle calls (logical parts were empty)", style="dim")
            return
        table = Table(title="Oracle calls")
        table.add_column("Pass", style="cyan")
        table.add_column("Line", justify="right")
        table.add_column("Received")
        table.add_column("Codeword", style="bold")
        for call in trace:
            table.add_row(call.side, str(call.index), _bits(call.received), _bits(call.codeword))
        self.console.print(table)

    def show_decode(self, result: DecodeResult, correction_support: Sequence[int], valid: bool,
                    success: Optional[bool] = None) -> None:
        """Display a correction together with its validity and, if known, the homology verdict.

        Args:
            result: Decoder output
            correction_support: Flat qubit indices of the correction
            valid: Whether the correction reproduces the syndrome
            success: Whether correction and true error are homology-equal, None if no error was supplied
        """
        self.show_trace(result.trace)
        text = Text()
        text.append("correction support: ", style="white")
        text.append(" ".join(str(i) for i in correction_support) or "(empty)", style="bold")
        text.append(f"\noracle calls: left {result.oracle_calls_a}, right {result.oracle_calls_bT}")
        text.append("\nvalid: ")
        text.append("yes" if valid else "NO", style=self.verdict_styles[valid])
        if success is not None:
            text.append("\nverdict: ")
            text.append("success" if success else "logical failure", style=self.verdict_styles[success])
        self.console.print(Panel(text, title="Decode", border_style="green" if valid else "red"))

    def show_mc_results(self, results: Sequence[McResult]) -> None:
        table = Table(title=results[0].code_id if results else "Monte Carlo")
        for name in ("p", "trials", "failures", "p_fail", "95% CI ±"):
            table.add_column(name, justify="right")
        for r in results:
            table.add_row(f"{r.p:g}", str(r.trials), str(r.failures), f"{r.p_fail:.4g}", f"{r.ci_halfwidth:.2g}")
        self.console.print(table)

    def show_thresholds(self, rows: List[Tuple[str, Optional[float], Optional[float], Optional[float]]],
                        decreasing: Optional[bool] = None) -> None:
        """Display pseudo-threshold estimates, one row per code.

        Args:
            rows: (code id, estimate, low, high); None where no crossing was found
            decreasing: Whether the last code lies significantly below the first
        """
        def fmt(value):
            return "-" if value is None else f"{value:.4g}"

        table = Table(title="Pseudo-thresholds")
        table.add_column("code", style="cyan")
        table.add_column("crossing", justify="right")
        table.add_column("low", justify="right")
        table.add_column("high", justify="right")
        for code_id, estimate, low, high in rows:
            table.add_row(code_id, fmt(estimate), fmt(low), fmt(high))
        self.console.print(table)
        if decreasing is not None:
            message = ("pseudo-threshold drops significantly with code size" if decreasing
                       else "no significant drop in pseudo-threshold")
            self.show_message(message, style=self.verdict_styles[decreasing])

    def show_sweep(self, report: SweepReport) -> None:
        text = Text()
        text.append(f"{report.corrected}/{report.total} errors of weight <= {report.t_max} corrected\n")
        text.append(f"max oracle calls: left {report.max_calls_left} (bound {report.call_bound_left}), "
                    f"right {report.max_calls_right} (bound {report.call_bound_right})")
        if report.oracle_calls:
            totals = ", ".join(f"{name} {count}" for name, count in report.oracle_calls.items())
            text.append(f"\ntotal oracle calls: {totals}")
        for support in report.failures[:10]:
            text.append(f"\nuncorrected: {support}", style="red")
        self.console.print(Panel(text, title=f"Sweep {report.code_id}",
                                 border_style="green" if report.passed else "red"))

    def show_properties(self, results: Sequence[PropertyResult]) -> None:
        """Pass/fail table of property checks with the first counterexample of each failure."""
        table = Table(title="Properties")
        table.add_column("module", style="cyan")
        table.add_column("property")
        table.add_column("cases", justify="right")
        table.add_column("result")
        for r in results:
            verdict = Text("pass" if r.passed else "FAIL", style=self.verdict_styles[r.passed])
            table.add_row(r.module, r.name, str(r.checked), verdict)
        self.console.print(table)
        for r in results:
            if not r.passed:
                self.show_error(f"{r.module}/{r.name}: {r.counterexample}")
