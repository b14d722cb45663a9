"""JSON schemas for eclkit outputs."""
