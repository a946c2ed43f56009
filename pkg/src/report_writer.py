"""
Report Writer Module
Assembles run reports and writes them as tables, JSON and CSV
"""

import json
import os
from dataclasses import dataclass, field
from typing import Dict, List

import pandas as pd

from checks import Check
from closure_qseq import QSequenceReport
from curve_invariants import BoundReport

CSV_COLUMNS = ['family', 'params', 'n', 'L_n', 'q_n', 'nr', 'br', 'pg', 'q_inf', 'checks_passed']


@dataclass
class Report:
    """Inputs echo plus every result of one command; deterministic given (config, seed)"""

    command: str
    config: Dict[str, object]
    qseq: List[QSequenceReport] = field(default_factory=list)
    bounds: List[BoundReport] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)
    values: Dict[str, object] = field(default_factory=dict)

    @property
    def all_checks(self) -> List[Check]:
        return [c for r in self.qseq for c in r.checks] + list(self.checks)

    @property
    def passed(self):
        return all(c.passed for c in self.all_checks)

    def to_dict(self):
        return {
            'metadata': {
                'command': self.command,
                'seed': self.config.get('seed'),
                'field': self.config.get('field'),
                'config': dict(self.config),
            },
            'qseq_reports': [r.to_dict() for r in self.qseq],
            'bounds': [b.to_dict() for b in self.bounds],
            'values': dict(self.values),
            'checks': [c.to_dict() for c in self.checks],
            'all_passed': self.passed,
        }


def params_label(params):
    return " ".join(f"{k}={v}" for k, v in params.items())


def qseq_rows(report: QSequenceReport):
    """One row per n = 1..n_max"""
    rows = []
    for n in range(1, report.n_max + 1):
        rows.append({
            'family': report.family,
            'params': params_label(report.params),
            'n': n,
            'L_n': report.L(n),
            'q_n': report.q_at(n),
            'nr': report.nr,
            'br': report.br,
            'pg': report.p_g,
            'q_inf': report.q_inf,
            'checks_passed': report.checks_passed,
        })
    return rows


def qseq_frame(reports: List[QSequenceReport]) -> pd.DataFrame:
    rows = [row for r in reports for row in qseq_rows(r)]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def bounds_frame(bounds: List[BoundReport]) -> pd.DataFrame:
    return pd.DataFrame([b.to_dict() for b in bounds])


class ReportWriter:
    """Writes reports to stdout tables and the machine formats"""

    def __init__(self, output_dir=None):
        """
        Args:
            output_dir: base directory for relative output paths (cwd by default)
        """
        self.output_dir = output_dir

    def _resolve(self, path):
        if self.output_dir and not os.path.isabs(path):
            path = os.path.join(self.output_dir, path)
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        return path

    def format_tables(self, report: Report) -> str:
        blocks = []
        if report.qseq:
            blocks.append(qseq_frame(report.qseq).to_string(index=False))
        if report.bounds:
            blocks.append(bounds_frame(report.bounds).to_string(index=False))
        if report.values:
            frame = pd.DataFrame({'quantity': list(report.values), 'value': [str(v) for v in report.values.values()]})
            blocks.append(frame.to_string(index=False))
        return "\n\n".join(blocks)

    def print_report(self, report: Report):
        print("\n" + '=' * 60)
        print(f"{report.command.upper()} ({report.config.get('field')}, seed {report.config.get('seed')})")
        print('=' * 60)
        # Tables
        tables = self.format_tables(report)
        if tables:
            print(tables)
        print()
        for r in report.qseq:
            # Notes flag assumed tails and skipped cross-checks
            for note in r.notes:
                print(f"⚠ {r.family} {params_label(r.params)}: {note}")
        # One ✓/✗ line per check
        for check in report.all_checks:
            print(check.status_line())

    def save_json(self, report: Report, path):
        path = self._resolve(path)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report.to_dict(), f, indent=2, default=str)
            f.write("\n")
        print(f"✓ Saved report: {path}")
        return path

    def save_csv(self, report: Report, path):
        path = self._resolve(path)
        qseq_frame(report.qseq).to_csv(path, index=False, lineterminator="\n")
        print(f"✓ Saved CSV: {path}")
        return path

    def load_json(self, path):
        if not os.path.exists(path):
            print(f"Report file not found: {path}")
            return None
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)

    def load_csv(self, path) -> pd.DataFrame:
        return pd.read_csv(path)
