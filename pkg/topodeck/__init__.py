"""
topodeck：有限拓扑空间的卡组重构引擎

计算有限拓扑空间在同胚意义下的卡片、卡组与多重卡组，穷举枚举所有 n 点拓扑，
在完整目录上搜索卡组碰撞并验证可有限检验的重构定理。
"""

__version__ = "0.1.0"
__author__ = "MCP开发团队"
