"""Rigidity and global-rigidity tools for frameworks on concentric surfaces."""
