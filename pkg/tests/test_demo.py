import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import demo  # noqa: E402


def test_demo_runs(capsys):
    demo.main()
    out = capsys.readouterr().out
    assert "nr = 1 < br = 3" in out
    assert "DEMO COMPLETE" in out
