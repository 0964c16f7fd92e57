"""
CrossTalk - probe susceptibilities of a cross-talking four-level atomic system
"""
__version__ = "1.0.0"
