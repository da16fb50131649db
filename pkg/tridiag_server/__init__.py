"""Tridiagonal spectra MCP server."""
