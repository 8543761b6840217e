"""Test package for the Lyndon array toolkit."""
