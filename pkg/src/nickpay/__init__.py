"""NickPay: nickname-based auditable payments over an NGS group signature."""

__version__ = "0.1.0"
