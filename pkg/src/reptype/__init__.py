"""reptype: representation type of posets, dyadic sets, graphs and marked quivers."""

__version__ = "0.3.0"
