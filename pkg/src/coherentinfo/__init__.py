"""Coherent information of quantum channels."""
