"""DRE-Bot arena package: learners, DRE layer, arena simulator and experiment harness."""

__version__ = "1.0.0"
