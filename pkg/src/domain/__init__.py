"""Módulo de dominio"""
