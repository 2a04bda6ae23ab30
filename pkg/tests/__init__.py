"""
Tests pour le package Dedek
"""
